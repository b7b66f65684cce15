#pragma once

#include <stdexcept>
#include <string>

namespace tvtv {

// Dimension disagreement between an image/vector and the object consuming it.
struct ShapeMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The measurement-space Gram solve (A A^H) failed to reach its residual
// target; reported separately from CG failures inside the solver.
struct GramSolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conjugate gradient in the ADMM x-update ran out of iterations.
struct CgFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedHeaderError : IoError {
  using IoError::IoError;
};

struct TruncatedPayloadError : IoError {
  using IoError::IoError;
};

struct DtypeMismatchError : IoError {
  using IoError::IoError;
};

}  // namespace tvtv

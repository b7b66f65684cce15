#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "tvtv/errors.hpp"

namespace tvtv {

using Complex = std::complex<double>;
using Index = Eigen::Index;

// Images are stored row-major so that .data() is already the row-major
// vectorization x of the pixel grid.
template <class Scalar>
using ImageOf = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using ComplexImage = ImageOf<Complex>;
using RealImage = ImageOf<double>;

using ComplexVector = Eigen::VectorXcd;

// Row-major vectorization views.
inline Eigen::Map<const ComplexVector> as_vector(const ComplexImage& img) {
  return {img.data(), img.size()};
}
inline Eigen::Map<ComplexVector> as_vector(ComplexImage& img) {
  return {img.data(), img.size()};
}

template <class Scalar>
bool image_is_finite(const ImageOf<Scalar>& img) {
  return img.allFinite();
}

// Boundary validation used at module entry points (file IO, operators,
// solver). Inner kernels assume valid data.
template <class Scalar>
void require_valid_image(const ImageOf<Scalar>& img, const char* what) {
  if (img.rows() < 1 || img.cols() < 1)
    throw ShapeMismatchError(std::string(what) + ": empty image");
  if (!image_is_finite(img))
    throw std::invalid_argument(std::string(what) + ": non-finite pixel values");
}

inline void require_same_shape(const ComplexImage& a, const ComplexImage& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatchError(std::string(what) + ": image shapes disagree");
}

inline RealImage magnitude(const ComplexImage& img) {
  return img.cwiseAbs();
}

}  // namespace tvtv

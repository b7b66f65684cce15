#pragma once

// Brute-force reference computations for the test suite. Everything here is
// materialized by direct loops or dense matrices and shares no kernels with
// the library implementations it checks.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "tvtv/image.hpp"
#include "tvtv/operators.hpp"

namespace tvtv::oracle {

// Forward-difference matrix over the row-major vectorization: n vertical
// rows (replicate boundary -> zero last image row) then n horizontal rows.
inline Eigen::MatrixXd diff_matrix(Index rows, Index cols) {
  const Index n = rows * cols;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2 * n, n);
  const auto at = [cols](Index i, Index j) { return i * cols + j; };
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      if (i + 1 < rows) {
        d(at(i, j), at(i + 1, j)) = 1.0;
        d(at(i, j), at(i, j)) = -1.0;
      }
      if (j + 1 < cols) {
        d(n + at(i, j), at(i, j + 1)) = 1.0;
        d(n + at(i, j), at(i, j)) = -1.0;
      }
    }
  return d;
}

inline double tv_bruteforce(const ComplexImage& x) {
  double total = 0.0;
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < x.cols(); ++j) {
      if (i + 1 < x.rows()) total += std::abs(x(i + 1, j) - x(i, j));
      if (j + 1 < x.cols()) total += std::abs(x(i, j + 1) - x(i, j));
    }
  return total;
}

// Unitary 2D DFT as a dense matrix acting on the row-major vectorization.
inline Eigen::MatrixXcd dft_matrix(Index rows, Index cols) {
  const Index n = rows * cols;
  Eigen::MatrixXcd f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index kr = 0; kr < rows; ++kr)
    for (Index kc = 0; kc < cols; ++kc)
      for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) {
          const double phase =
              -2.0 * std::numbers::pi *
              (static_cast<double>(kr * r) / static_cast<double>(rows) +
               static_cast<double>(kc * c) / static_cast<double>(cols));
          f(kr * cols + kc, r * cols + c) = scale * Complex(std::cos(phase), std::sin(phase));
        }
  return f;
}

inline std::vector<Index> mask_indices(const SamplingMask& mask) {
  std::vector<Index> idx;
  for (Index i = 0; i < mask.rows; ++i)
    for (Index j = 0; j < mask.cols; ++j)
      if (mask.kept(i, j)) idx.push_back(i * mask.cols + j);
  return idx;
}

inline Eigen::MatrixXcd masked_fourier_matrix(const SamplingMask& mask) {
  const Eigen::MatrixXcd f = dft_matrix(mask.rows, mask.cols);
  const std::vector<Index> idx = mask_indices(mask);
  Eigen::MatrixXcd a(static_cast<Index>(idx.size()), f.cols());
  for (std::size_t r = 0; r < idx.size(); ++r) a.row(static_cast<Index>(r)) = f.row(idx[r]);
  return a;
}

inline Eigen::MatrixXcd multicoil_matrix(const SamplingMask& mask,
                                         const CoilSensitivities& sens) {
  const Eigen::MatrixXcd sf = masked_fourier_matrix(mask);
  Eigen::MatrixXcd a(sf.rows() * sens.coil_count(), sf.cols());
  for (Index c = 0; c < sens.coil_count(); ++c) {
    Eigen::Map<const ComplexVector> map(sens.maps[static_cast<std::size_t>(c)].data(),
                                        sf.cols());
    a.middleRows(c * sf.rows(), sf.rows()) = sf * map.asDiagonal();
  }
  return a;
}

// Materialize any operator column-by-column through its forward map.
inline Eigen::MatrixXcd materialize(const LinearOperator& op) {
  const Index n = op.image_rows() * op.image_cols();
  Eigen::MatrixXcd a(op.measurement_size(), n);
  for (Index k = 0; k < n; ++k) {
    ComplexImage basis = ComplexImage::Zero(op.image_rows(), op.image_cols());
    basis.data()[k] = 1.0;
    a.col(k) = op.forward(basis);
  }
  return a;
}

}  // namespace tvtv::oracle

#pragma once

#include <Eigen/Dense>

#include "tvtv/image.hpp"

namespace tvtv {

// Forward-difference field of an M x N image under the replicate (Neumann)
// boundary convention: differences that would leave the grid are zero, so the
// stacked field matches D in R^{2n x n} with zero rows on the last image row
// (vertical) and last column (horizontal).
template <class Scalar>
struct DiffFieldOf {
  ImageOf<Scalar> vertical;    // v(i,j) = x(i+1,j) - x(i,j), last row zero
  ImageOf<Scalar> horizontal;  // h(i,j) = x(i,j+1) - x(i,j), last column zero

  Index rows() const { return vertical.rows(); }
  Index cols() const { return vertical.cols(); }

  // [vertical; horizontal], each block row-major: the vector D x.
  Eigen::Vector<Scalar, Eigen::Dynamic> stacked() const {
    Eigen::Vector<Scalar, Eigen::Dynamic> out(2 * vertical.size());
    out.head(vertical.size()) = Eigen::Map<const Eigen::Vector<Scalar, Eigen::Dynamic>>(
        vertical.data(), vertical.size());
    out.tail(horizontal.size()) = Eigen::Map<const Eigen::Vector<Scalar, Eigen::Dynamic>>(
        horizontal.data(), horizontal.size());
    return out;
  }
};

using DiffField = DiffFieldOf<Complex>;
using RealDiffField = DiffFieldOf<double>;

// D x
template <class Scalar>
DiffFieldOf<Scalar> apply_diff(const ImageOf<Scalar>& img) {
  const Index m = img.rows(), n = img.cols();
  DiffFieldOf<Scalar> f;
  f.vertical.setZero(m, n);
  f.horizontal.setZero(m, n);
  if (m > 1)
    f.vertical.topRows(m - 1) = img.bottomRows(m - 1) - img.topRows(m - 1);
  if (n > 1)
    f.horizontal.leftCols(n - 1) = img.rightCols(n - 1) - img.leftCols(n - 1);
  return f;
}

// D^T y for a stacked field y. D is real, so this is also the complex adjoint:
// <D x, y> = <x, apply_diff_adjoint(y)> with conjugation on the second slot.
// Entries multiplying zero rows of D (last image row / column) are ignored.
template <class Scalar>
ImageOf<Scalar> apply_diff_adjoint(const DiffFieldOf<Scalar>& f) {
  const Index m = f.rows(), n = f.cols();
  ImageOf<Scalar> out = ImageOf<Scalar>::Zero(m, n);
  if (m > 1) {
    out.topRows(m - 1) -= f.vertical.topRows(m - 1);
    out.bottomRows(m - 1) += f.vertical.topRows(m - 1);
  }
  if (n > 1) {
    out.leftCols(n - 1) -= f.horizontal.leftCols(n - 1);
    out.rightCols(n - 1) += f.horizontal.leftCols(n - 1);
  }
  return out;
}

// Anisotropic TV semi-norm ||D x||_1, moduli summed over both difference
// fields. Zero exactly on constant images.
template <class Scalar>
double tv_seminorm(const ImageOf<Scalar>& img) {
  const DiffFieldOf<Scalar> f = apply_diff(img);
  return f.vertical.cwiseAbs().sum() + f.horizontal.cwiseAbs().sum();
}

// 2 D^T D x + x, the Hermitian positive definite system of the ADMM x-update.
// Spectrum lies in [1, 17]: D^T D is a grid Laplacian with eigenvalues in [0, 8].
template <class Scalar>
ImageOf<Scalar> normal_op_apply(const ImageOf<Scalar>& x) {
  return 2.0 * apply_diff_adjoint(apply_diff(x)) + x;
}

}  // namespace tvtv

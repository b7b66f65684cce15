#pragma once

// Exact linear-programming reference for the real anisotropic TV-TV problem
//
//   minimize ||D x||_1 + beta ||D (x - w)||_1   subject to  A x = b
//
// via the split u = p - q, v = r - s (p, q, r, s >= 0) and a Mehrotra
// predictor-corrector interior-point method on the resulting LP. This oracle
// was written against the optimality conditions directly and is kept
// permanently in the suite as the solver's ground truth on small instances.

#include <Eigen/Dense>

#include "tvtv/image.hpp"

namespace tvtv::testing {

struct LpSolution {
  double objective = 0.0;       // optimal value c^T y (== d^T lambda at optimum)
  Eigen::VectorXd x;            // optimal image variables (row-major)
  double primal_residual = 0.0; // ||constraints|| / (1 + ||d||)
  double dual_residual = 0.0;   // ||dual feasibility|| / (1 + ||c||)
  double gap = 0.0;             // |primal - dual objective| / (1 + |primal|)
  int iterations = 0;
};

LpSolution solve_tvtv_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& w, Index rows, Index cols, double beta);

}  // namespace tvtv::testing

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tvtv/image.hpp"
#include "tvtv/operators.hpp"

namespace tvtv {

struct SolverConfig {
  double beta = 1.0;     // objective trade-off between ||x||_TV and ||x-w||_TV
  double rho = 1.0;      // ADMM penalty, fixed (no adaptive update)
  int max_iters = 100;
  double eps_abs = 1e-8;
  double eps_rel = 1e-6;
  double cg_tol = 1e-10;
  int cg_max_iters = 500;

  // Single-coil configuration used alongside the default: beta = 0.8 and a
  // 50-iteration cap.
  static SolverConfig crnn_preset() {
    SolverConfig cfg;
    cfg.beta = 0.8;
    cfg.max_iters = 50;
    return cfg;
  }

  void validate() const;
};

enum class Termination { ResidualTolerance, MaxIterations };

std::string to_string(Termination t);

struct SolverResult {
  ComplexImage x_hat;                     // final consistency iterate z
  int iterations_run = 0;
  std::vector<double> objective_trace;    // objective(z_k, w, beta)
  std::vector<double> consistency_trace;  // ||A z_k - b||_2
  std::vector<double> primal_residuals;
  std::vector<double> dual_residuals;
  bool converged = false;
  Termination termination_reason = Termination::MaxIterations;
};

// prox of tau*|.| for the complex modulus: shrinks the magnitude by tau,
// preserves the phase, 0 at the origin. tau = 0 is the identity.
inline Complex complex_soft_threshold(Complex z, double tau) {
  if (tau <= 0.0) return z;
  const double a = std::abs(z);
  if (a <= tau) return Complex(0.0, 0.0);
  return z * (1.0 - tau / a);
}

// ||x||_TV + beta * ||x - w||_TV
double objective(const ComplexImage& x, const ComplexImage& w, double beta);

// Minimize objective(x, w, beta) subject to A x = b via ADMM on the splitting
// u = D x, v = D (x - w), z = x with an indicator constraint A z = b. The
// returned image is the final z iterate, which is consistent by construction
// of the projection.
SolverResult solve_tvtv(const LinearOperator& op, const ComplexVector& b, const ComplexImage& w,
                        const SolverConfig& config = SolverConfig());

}  // namespace tvtv

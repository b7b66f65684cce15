#include "lp_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"

namespace tvtv::testing {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Largest alpha in [0, 1] keeping v + alpha*dv >= 0.
double max_step(const VectorXd& v, const VectorXd& dv) {
  double alpha = 1.0;
  for (Index i = 0; i < v.size(); ++i)
    if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
  return alpha;
}

}  // namespace

LpSolution solve_tvtv_lp(const MatrixXd& a, const VectorXd& b, const VectorXd& w, Index rows,
                         Index cols, double beta) {
  const Index n = rows * cols;
  if (a.cols() != n || b.size() != a.rows() || w.size() != n || beta < 0.0)
    throw std::invalid_argument("solve_tvtv_lp: inconsistent instance");
  const Index m = a.rows();
  const Index dn = 2 * n;       // rows of D
  const Index ny = 4 * dn;      // p, q, r, s
  const Index mc = m + 2 * dn;  // equality constraints
  const Index sz = mc + n;      // saddle system: multipliers + free x

  const MatrixXd dmat = oracle::diff_matrix(rows, cols);

  // Constraints: A x = b; D x - p + q = 0; D x - r + s = D w.
  VectorXd d(mc);
  d << b, VectorXd::Zero(dn), dmat * w;
  VectorXd cy(ny);
  cy << VectorXd::Ones(dn), VectorXd::Ones(dn), VectorXd::Constant(dn, beta),
      VectorXd::Constant(dn, beta);

  MatrixXd gx(mc, n);
  gx << a, dmat, dmat;

  const auto gn_apply = [&](const VectorXd& y) {
    VectorXd out = VectorXd::Zero(mc);
    out.segment(m, dn) = y.segment(dn, dn) - y.segment(0, dn);
    out.segment(m + dn, dn) = y.segment(3 * dn, dn) - y.segment(2 * dn, dn);
    return out;
  };
  const auto gnt_apply = [&](const VectorXd& lam) {
    VectorXd out(ny);
    out.segment(0, dn) = -lam.segment(m, dn);
    out.segment(dn, dn) = lam.segment(m, dn);
    out.segment(2 * dn, dn) = -lam.segment(m + dn, dn);
    out.segment(3 * dn, dn) = lam.segment(m + dn, dn);
    return out;
  };

  VectorXd x = VectorXd::Zero(n);
  VectorXd y = VectorXd::Constant(ny, 10.0);
  VectorXd z = VectorXd::Constant(ny, 10.0);
  VectorXd lam = VectorXd::Zero(mc);

  constexpr double kTol = 1e-8;
  constexpr int kMaxIters = 200;

  LpSolution sol;
  for (int iter = 1; iter <= kMaxIters; ++iter) {
    const VectorXd r_p = d - gx * x - gn_apply(y);
    const VectorXd r_dx = -(gx.transpose() * lam);
    const VectorXd r_dy = cy - gnt_apply(lam) - z;
    const double mu = y.dot(z) / static_cast<double>(ny);

    const double primal_obj = cy.dot(y);
    const double dual_obj = d.dot(lam);
    sol.objective = primal_obj;
    sol.iterations = iter - 1;
    sol.primal_residual = r_p.norm() / (1.0 + d.norm());
    sol.dual_residual =
        std::sqrt(r_dx.squaredNorm() + r_dy.squaredNorm()) / (1.0 + cy.norm());
    sol.gap = std::abs(primal_obj - dual_obj) / (1.0 + std::abs(primal_obj));
    if (sol.primal_residual <= kTol && sol.dual_residual <= kTol && sol.gap <= kTol &&
        mu <= kTol * (1.0 + std::abs(primal_obj))) {
      sol.x = x;
      return sol;
    }

    // Saddle system in (delta lambda, delta x) after eliminating the
    // nonnegative variables and their duals.
    const VectorXd theta = y.cwiseQuotient(z);
    MatrixXd k = MatrixXd::Zero(sz, sz);
    k.block(m, m, dn, dn).diagonal() = theta.segment(0, dn) + theta.segment(dn, dn);
    k.block(m + dn, m + dn, dn, dn).diagonal() =
        theta.segment(2 * dn, dn) + theta.segment(3 * dn, dn);
    k.topRightCorner(mc, n) = gx;
    k.bottomLeftCorner(n, mc) = gx.transpose();
    const Eigen::PartialPivLU<MatrixXd> lu(k);

    const auto solve_step = [&](const VectorXd& comp_rhs, VectorXd& dlam, VectorXd& dx,
                                VectorXd& dy, VectorXd& dz) {
      const VectorXd v = comp_rhs.cwiseQuotient(z) - theta.cwiseProduct(r_dy);
      VectorXd rhs(sz);
      rhs << r_p - gn_apply(v), r_dx;
      const VectorXd step = lu.solve(rhs);
      if (!step.allFinite()) throw std::runtime_error("LP oracle: singular saddle system");
      dlam = step.head(mc);
      dx = step.tail(n);
      dy = v + theta.cwiseProduct(gnt_apply(dlam));
      dz = r_dy - gnt_apply(dlam);
    };

    VectorXd dlam, dx, dy, dz;
    solve_step(-y.cwiseProduct(z), dlam, dx, dy, dz);
    const double ap_aff = max_step(y, dy);
    const double ad_aff = max_step(z, dz);
    const double mu_aff =
        (y + ap_aff * dy).dot(z + ad_aff * dz) / static_cast<double>(ny);
    const double sigma = std::pow(mu_aff / mu, 3.0);

    const VectorXd comp =
        VectorXd::Constant(ny, sigma * mu) - y.cwiseProduct(z) - dy.cwiseProduct(dz);
    solve_step(comp, dlam, dx, dy, dz);

    const double ap = std::min(1.0, 0.995 * max_step(y, dy));
    const double ad = std::min(1.0, 0.995 * max_step(z, dz));
    x += ap * dx;
    y += ap * dy;
    lam += ad * dlam;
    z += ad * dz;
  }
  throw std::runtime_error("LP oracle: interior-point method did not converge");
}

}  // namespace tvtv::testing

#include "tvtv/solver.hpp"

#include <cmath>

#include "tvtv/diff.hpp"
#include "tvtv/errors.hpp"

namespace tvtv {

void SolverConfig::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("SolverConfig: beta must be finite and nonnegative");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("SolverConfig: rho must be positive");
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be positive");
  if (!(eps_abs >= 0.0) || !std::isfinite(eps_abs) || !(eps_rel >= 0.0) || !std::isfinite(eps_rel))
    throw std::invalid_argument("SolverConfig: tolerances must be finite and nonnegative");
  if (!(cg_tol > 0.0) || cg_max_iters < 1)
    throw std::invalid_argument("SolverConfig: CG parameters out of range");
}

std::string to_string(Termination t) {
  return t == Termination::ResidualTolerance ? "residual-tolerance" : "max-iterations";
}

double objective(const ComplexImage& x, const ComplexImage& w, double beta) {
  require_same_shape(x, w, "objective");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("objective: beta must be finite and nonnegative");
  return tv_seminorm<Complex>(x) + beta * tv_seminorm<Complex>(ComplexImage(x - w));
}

namespace {

double field_squared_norm(const DiffField& f) {
  return f.vertical.squaredNorm() + f.horizontal.squaredNorm();
}

double field_tv(const DiffField& f) {
  return f.vertical.cwiseAbs().sum() + f.horizontal.cwiseAbs().sum();
}

DiffField field_zero(Index rows, Index cols) {
  DiffField f;
  f.vertical.setZero(rows, cols);
  f.horizontal.setZero(rows, cols);
  return f;
}

DiffField soft_threshold(const DiffField& f, double tau) {
  DiffField out;
  out.vertical = f.vertical.unaryExpr(
      [tau](Complex z) { return complex_soft_threshold(z, tau); });
  out.horizontal = f.horizontal.unaryExpr(
      [tau](Complex z) { return complex_soft_threshold(z, tau); });
  return out;
}

double dot_real(const ComplexImage& a, const ComplexImage& b) {
  return Eigen::Map<const ComplexVector>(a.data(), a.size())
      .dot(Eigen::Map<const ComplexVector>(b.data(), b.size()))
      .real();
}

// CG on (2 D^T D + I) x = rhs; spectrum in [1, 17] keeps this well
// conditioned for any image size.
ComplexImage cg_normal_equations(const ComplexImage& rhs, ComplexImage x, double tol, int cap) {
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) return ComplexImage::Zero(rhs.rows(), rhs.cols());
  const double target = tol * rhs_norm;

  ComplexImage r = rhs - normal_op_apply<Complex>(x);
  double rs = r.squaredNorm();
  if (std::sqrt(rs) <= target) return x;
  ComplexImage p = r;
  for (int it = 0; it < cap; ++it) {
    const ComplexImage ap = normal_op_apply<Complex>(p);
    const double pap = dot_real(p, ap);
    const double alpha = rs / pap;
    x += alpha * p;
    r -= alpha * ap;
    const double rs_new = r.squaredNorm();
    if (std::sqrt(rs_new) <= target) return x;
    p = r + (rs_new / rs) * p;
    rs = rs_new;
  }
  throw CgFailureError("solve_tvtv: x-update CG did not reach tolerance");
}

}  // namespace

SolverResult solve_tvtv(const LinearOperator& op, const ComplexVector& b, const ComplexImage& w,
                        const SolverConfig& config) {
  config.validate();
  op.require_image_shape(w, "solve_tvtv");
  op.require_measurement_length(b, "solve_tvtv");
  require_valid_image(w, "solve_tvtv surrogate");
  if (!b.allFinite()) throw std::invalid_argument("solve_tvtv: non-finite measurements");

  const Index rows = w.rows(), cols = w.cols();
  const double n = static_cast<double>(rows) * static_cast<double>(cols);

  // Internal scale normalization: the problem is positively homogeneous, so
  // solving at pixel scale O(1) and rescaling makes the iterate path (and the
  // fixed 1/rho thresholds) independent of the data scale.
  double scale = std::max(op.adjoint(b).cwiseAbs().maxCoeff(), w.cwiseAbs().maxCoeff());
  if (!(scale > 0.0)) scale = 1.0;
  const ComplexVector bs = b / scale;
  const ComplexImage ws = w / scale;

  const double rho = config.rho;
  const double beta = config.beta;

  const DiffField dw = apply_diff<Complex>(ws);
  const double norm_c = std::sqrt(field_squared_norm(dw));

  ComplexImage x = ws;
  DiffField u = dw;
  DiffField v = field_zero(rows, cols);
  ComplexImage z = op.project_consistent(ws, bs);
  DiffField lu = field_zero(rows, cols);
  DiffField lv = field_zero(rows, cols);
  ComplexImage lz = ComplexImage::Zero(rows, cols);

  SolverResult result;
  result.objective_trace.reserve(config.max_iters);
  result.consistency_trace.reserve(config.max_iters);
  result.primal_residuals.reserve(config.max_iters);
  result.dual_residuals.reserve(config.max_iters);

  for (int k = 1; k <= config.max_iters; ++k) {
    // x-update: (2 D^T D + I) x = D^T (u - lu) + D^T (v - lv + D w) + (z - lz)
    DiffField g;
    g.vertical = (u.vertical - lu.vertical) + (v.vertical - lv.vertical + dw.vertical);
    g.horizontal = (u.horizontal - lu.horizontal) + (v.horizontal - lv.horizontal + dw.horizontal);
    const ComplexImage rhs = apply_diff_adjoint(g) + (z - lz);
    x = cg_normal_equations(rhs, x, config.cg_tol, config.cg_max_iters);

    const DiffField dx = apply_diff<Complex>(x);
    DiffField dxw;
    dxw.vertical = dx.vertical - dw.vertical;
    dxw.horizontal = dx.horizontal - dw.horizontal;

    const DiffField u_prev = u;
    const DiffField v_prev = v;
    const ComplexImage z_prev = z;

    DiffField t;
    t.vertical = dx.vertical + lu.vertical;
    t.horizontal = dx.horizontal + lu.horizontal;
    u = soft_threshold(t, 1.0 / rho);

    t.vertical = dxw.vertical + lv.vertical;
    t.horizontal = dxw.horizontal + lv.horizontal;
    v = soft_threshold(t, beta / rho);

    z = op.project_consistent(x + lz, bs);

    lu.vertical += dx.vertical - u.vertical;
    lu.horizontal += dx.horizontal - u.horizontal;
    lv.vertical += dxw.vertical - v.vertical;
    lv.horizontal += dxw.horizontal - v.horizontal;
    lz += x - z;

    // Residuals of the stacked constraint [D; D; I] x = (u, v + Dw, z).
    DiffField ru, rv;
    ru.vertical = dx.vertical - u.vertical;
    ru.horizontal = dx.horizontal - u.horizontal;
    rv.vertical = dxw.vertical - v.vertical;
    rv.horizontal = dxw.horizontal - v.horizontal;
    const double r_pri = std::sqrt(field_squared_norm(ru) + field_squared_norm(rv) +
                                   (x - z).squaredNorm());

    DiffField du, dv;
    du.vertical = u.vertical - u_prev.vertical;
    du.horizontal = u.horizontal - u_prev.horizontal;
    dv.vertical = v.vertical - v_prev.vertical;
    dv.horizontal = v.horizontal - v_prev.horizontal;
    const double s_dual =
        rho * (apply_diff_adjoint(du) + apply_diff_adjoint(dv) + (z - z_prev)).norm();

    const double norm_kx = std::sqrt(2.0 * field_squared_norm(dx) + x.squaredNorm());
    const double norm_y =
        std::sqrt(field_squared_norm(u) + field_squared_norm(v) + z.squaredNorm());
    const double eps_pri = std::sqrt(5.0 * n) * config.eps_abs +
                           config.eps_rel * std::max({norm_kx, norm_y, norm_c});
    const double dual_scale =
        rho * (apply_diff_adjoint(lu) + apply_diff_adjoint(lv) + lz).norm();
    const double eps_dual = std::sqrt(n) * config.eps_abs + config.eps_rel * dual_scale;

    result.objective_trace.push_back(
        scale * (field_tv(apply_diff<Complex>(z)) +
                 beta * field_tv(apply_diff<Complex>(ComplexImage(z - ws)))));
    result.consistency_trace.push_back(scale * (op.forward(z) - bs).norm());
    result.primal_residuals.push_back(scale * r_pri);
    result.dual_residuals.push_back(scale * s_dual);
    result.iterations_run = k;

    if (r_pri <= eps_pri && s_dual <= eps_dual) {
      result.converged = true;
      result.termination_reason = Termination::ResidualTolerance;
      break;
    }
  }

  if (!result.converged) result.termination_reason = Termination::MaxIterations;
  result.x_hat = scale * z;
  return result;
}

}  // namespace tvtv

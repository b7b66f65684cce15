// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Criteria 2 and 6 share the same 12-case reconstruction matrix so
// each case is solved exactly once.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dense_operator.hpp"
#include "lp_oracle.hpp"
#include "oracles.hpp"
#include "tvtv/diff.hpp"
#include "tvtv/io.hpp"
#include "tvtv/metrics.hpp"
#include "tvtv/operators.hpp"
#include "tvtv/phantom.hpp"
#include "tvtv/rng.hpp"
#include "tvtv/solver.hpp"

using namespace tvtv;
using tvtv::testing::DenseOperator;
using tvtv::testing::LpSolution;
using tvtv::testing::solve_tvtv_lp;

namespace {

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return std::string(buf);
}

int g_failures = 0;

void record(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%d/9] %-28s %s  (%s)\n", id, name.c_str(), pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Shared 12-case reconstruction matrix: {32, 64} x {2, 4, 6} x {blur, zero-filled}.

struct MatrixCase {
  Index size = 0;
  double accel = 0.0;
  DegradeKind kind = DegradeKind::Blur;
  double b_norm = 0.0;
  double final_consistency = 0.0;
  double psnr_w = 0.0;
  double psnr_xhat = 0.0;
};

std::vector<MatrixCase> run_case_matrix(double* total_seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<MatrixCase> cases;
  int case_index = 0;
  for (Index size : {Index(32), Index(64)}) {
    const ComplexImage x_star = shepp_logan(size, size);
    for (double accel : {2.0, 4.0, 6.0}) {
      for (DegradeKind kind : {DegradeKind::Blur, DegradeKind::ZeroFilled}) {
        const Index center = size == 32 ? 4 : 8;
        const SamplingMask mask = make_cartesian_mask(
            size, size, accel, center, mix_seed(9000, static_cast<std::uint64_t>(case_index)));
        const MeasurementOperator op = make_masked_fourier(mask);
        const ComplexVector b = op.forward(x_star);
        DegradeParams params;
        params.sigma = 1.5;
        const ComplexImage w = degrade_surrogate(x_star, &op, kind, params, 0);

        SolverConfig cfg;
        cfg.beta = 1.0;
        cfg.max_iters = 200;
        const SolverResult result = solve_tvtv(op, b, w, cfg);

        MatrixCase mc;
        mc.size = size;
        mc.accel = accel;
        mc.kind = kind;
        mc.b_norm = b.norm();
        mc.final_consistency = consistency(op, result.x_hat, b);
        const CropRegion full = CropRegion::full(size, size);
        mc.psnr_w = psnr(x_star, w, full);
        mc.psnr_xhat = psnr(x_star, result.x_hat, full);
        cases.push_back(mc);
        ++case_index;
      }
    }
  }
  *total_seconds = seconds_since(t0);
  return cases;
}

// ---------------------------------------------------------------------------
// Criterion 9 helpers: drive the CLI through two identical pipeline runs.

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TVTV_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool run_pipeline(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto base = [&](const char* name) { return (dir / name).string(); };
  if (run_cli("phantom --rows 32 --cols 32 --out " + base("x")) != 0) return false;
  if (run_cli("mask --rows 32 --cols 32 --accel 4 --center-lines 4 --seed 11 --out " +
              base("m")) != 0)
    return false;
  if (run_cli("measure --image " + base("x") + " --mask " + base("m") + " --out " +
              base("b")) != 0)
    return false;
  if (run_cli("degrade --image " + base("x") + " --kind blur-noise --sigma 1.5 "
              "--noise-level 0.02 --seed 21 --out " + base("w")) != 0)
    return false;
  if (run_cli("reconstruct --surrogate " + base("w") + " --measurement " + base("b") +
              " --mask " + base("m") + " --beta 1 --max-iters 40 --out " + base("xhat") +
              " --trace " + base("trace.csv")) != 0)
    return false;
  if (run_cli("evaluate --ref " + base("x") + " --test " + base("xhat") + " --test " +
              base("w") + " --mask " + base("m") + " --measurement " + base("b") +
              " --png-dir " + base("png") + " --out " + base("report.csv")) != 0)
    return false;
  if (run_cli("boundcheck --model blurred-adjoint --rows 16 --cols 16 --accel 2 "
              "--center-lines 2 --mask-seed 3 --trials 500 --seed 17 --out " +
              base("bound.csv")) != 0)
    return false;
  return true;
}

// ---------------------------------------------------------------------------
// Criteria.

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const ComplexImage x_star = shepp_logan(64, 64);
  const SamplingMask mask = make_cartesian_mask(64, 64, 4.0, 8, 42);
  const MeasurementOperator op = make_masked_fourier(mask);
  const ComplexVector b = op.forward(x_star);
  DegradeParams params;
  params.sigma = 1.5;
  const ComplexImage w = degrade_surrogate(x_star, &op, DegradeKind::Blur, params, 0);

  SolverConfig cfg;
  cfg.beta = 1.0;
  cfg.max_iters = 100;
  const SolverResult result = solve_tvtv(op, b, w, cfg);
  const double elapsed = seconds_since(t0);

  const double before = consistency(op, w, b);
  const double after = consistency(op, result.x_hat, b);
  const double ratio = after / before;
  const bool pass = ratio <= 1e-4 && result.iterations_run <= 100 && elapsed <= 30.0;
  record(1, "consistency-improvement", pass,
         fmt("ratio %.3g, %d iterations, %.2f s", ratio, result.iterations_run, elapsed));
}

void criterion_2(const std::vector<MatrixCase>& cases, double total_seconds) {
  bool feasible = true;
  double worst_rel = 0.0;
  for (const MatrixCase& mc : cases) {
    const double tol = 1e-8 * std::max(1.0, mc.b_norm);
    worst_rel = std::max(worst_rel, mc.final_consistency / tol);
    if (mc.final_consistency > tol) feasible = false;
  }
  record(2, "feasibility-matrix", feasible && total_seconds <= 300.0,
         fmt("12 cases, worst consistency at %.3g of tolerance, %.1f s", worst_rel,
             total_seconds));
}

void criterion_6(const std::vector<MatrixCase>& cases) {
  std::vector<double> gains;
  bool every_improved = true;
  for (const MatrixCase& mc : cases) {
    if (mc.kind != DegradeKind::Blur) continue;
    const double gain = mc.psnr_xhat - mc.psnr_w;
    gains.push_back(gain);
    if (!(mc.psnr_xhat > mc.psnr_w)) every_improved = false;
  }
  std::sort(gains.begin(), gains.end());
  const double median_gain = (gains[2] + gains[3]) / 2.0;
  record(6, "psnr-improvement", every_improved && median_gain >= 1.0,
         fmt("min gain %.2f dB, median gain %.2f dB over %zu blur cases", gains.front(),
             median_gain, gains.size()));
}

void criterion_3() {
  const Index rows = 8, cols = 8, m = 32;
  const Index n = rows * cols;
  const double beta = 1.0;
  double worst = 0.0;
  bool pass = true;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(mix_seed(3000, static_cast<std::uint64_t>(trial)));
    Eigen::MatrixXd a(m, n);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) a(i, j) = rng.normal();
    Eigen::VectorXd x0(n), w_real(n);
    for (Index j = 0; j < n; ++j) x0[j] = rng.normal();
    for (Index j = 0; j < n; ++j) w_real[j] = rng.normal();
    const Eigen::VectorXd b_real = a * x0;

    const LpSolution lp = solve_tvtv_lp(a, b_real, w_real, rows, cols, beta);

    const DenseOperator op(a.cast<Complex>(), rows, cols);
    const ComplexVector b = b_real.cast<Complex>();
    ComplexImage w(rows, cols);
    Eigen::Map<Eigen::VectorXcd>(w.data(), n) = w_real.cast<Complex>();

    SolverConfig cfg;
    cfg.beta = beta;
    // Dense Gaussian instances have no structure for the splitting to exploit, so
    // matching the oracle to 1e-4 needs a long tail: a heavier quadratic penalty
    // plus a budget well past the point where the residual test would fire.
    cfg.rho = 10.0;
    cfg.max_iters = 120000;
    cfg.eps_abs = 1e-14;
    cfg.eps_rel = 1e-12;
    cfg.cg_tol = 1e-14;
    const SolverResult result = solve_tvtv(op, b, w, cfg);
    const double obj = objective(result.x_hat, w, beta);
    const double rel = std::abs(obj - lp.objective) / std::abs(lp.objective);
    worst = std::max(worst, rel);
    if (rel > 1e-4) pass = false;
  }
  record(3, "lp-oracle-optimality", pass, fmt("20 instances, worst relative gap %.3g", worst));
}

void criterion_4() {
  bool pass = true;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Index size = 10 + 2 * (trial % 4);  // 10, 12, 14, 16
    const double accel = trial % 2 == 0 ? 2.0 : 3.0;
    const SamplingMask mask = make_cartesian_mask(
        size, size, accel, 2, mix_seed(4000, static_cast<std::uint64_t>(trial)));
    const MeasurementOperator op = make_masked_fourier(mask);
    const ComplexImage seed_img =
        random_complex_image(size, size, mix_seed(4100, static_cast<std::uint64_t>(trial)));
    const ComplexVector b = op.forward(seed_img);
    const ComplexImage w = op.adjoint(b);  // A w = A A^H b = b exactly

    SolverConfig cfg;
    cfg.beta = 1.0;
    cfg.max_iters = 20000;
    cfg.eps_abs = 1e-12;
    cfg.eps_rel = 1e-9;
    const SolverResult result = solve_tvtv(op, b, w, cfg);
    const double ratio = objective(result.x_hat, w, 1.0) / tv_seminorm(w);
    worst = std::max(worst, ratio);
    if (!(ratio <= 1.0 + 1e-6)) pass = false;
  }
  record(4, "triangle-inequality-optimum", pass,
         fmt("10 cases, worst ratio 1 + %.3g", worst - 1.0));
}

void criterion_5() {
  bool pass = true;
  double worst = 0.0;
  const std::array<double, 5> betas = {0.0, 0.5, 1.0, 2.0, 5.0};
  for (int trial = 0; trial < 5; ++trial) {
    const Index rows = 8 + 3 * trial;
    const Index cols = 8 + 2 * (trial % 3);
    const SamplingMask mask = make_cartesian_mask(rows, cols, 1.0, 0, 1);
    const MeasurementOperator op = make_masked_fourier(mask);
    const ComplexImage x_star =
        random_complex_image(rows, cols, mix_seed(5000, static_cast<std::uint64_t>(trial)));
    const ComplexVector b = op.forward(x_star);
    const ComplexImage w =
        random_complex_image(rows, cols, mix_seed(5100, static_cast<std::uint64_t>(trial)));

    SolverConfig cfg;
    cfg.beta = betas[static_cast<std::size_t>(trial)];
    cfg.max_iters = 10;
    const SolverResult result = solve_tvtv(op, b, w, cfg);
    const double rel = (result.x_hat - x_star).matrix().norm() / x_star.matrix().norm();
    worst = std::max(worst, rel);
    if (rel > 1e-8) pass = false;
  }
  record(5, "full-sampling-exactness", pass, fmt("5 cases, worst relative error %.3g", worst));
}

void criterion_7() {
  const double expected_margin = std::sqrt(std::log(100.0) / (2.0 * 10000.0));
  bool pass = true;

  const double spot = prop1_bound({1.0, 0.5, 2.0, 0.5});
  if (std::abs(spot - 0.393469) > 1e-6) pass = false;

  const SamplingMask mask = make_cartesian_mask(32, 32, 2.0, 4, 7);
  const MeasurementOperator op = make_masked_fourier(mask);
  const ImageSampler sampler = ImageSampler::parse("gaussian", 32, 32);

  int rows_checked = 0;
  int violations = 0;
  for (const char* model_name : {"zero-map", "blurred-adjoint"}) {
    const SurrogateModel model = SurrogateModel::parse(model_name);
    const BoundCheckReport report = run_bound_check(op, model, sampler, {}, 10000, 2026);
    if (!report.applicable || report.rows.size() != 3) pass = false;
    if (std::abs(report.margin - expected_margin) > 1e-12) pass = false;
    for (const BoundCheckRow& row : report.rows) {
      if (row.skipped) {
        pass = false;
        continue;
      }
      ++rows_checked;
      if (row.empirical < row.bound - expected_margin) {
        ++violations;
        pass = false;
      }
    }
    if (!report.overall_pass) pass = false;
  }
  record(7, "prop1-validation", pass,
         fmt("spot |err| %.2g, %d delta rows, %d violations", std::abs(spot - 0.393469),
             rows_checked, violations));
}

void criterion_8() {
  bool pass = true;
  double worst_adj = 0.0;

  // adjoint identity for the difference operator and both measurement kinds
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(mix_seed(8000, static_cast<std::uint64_t>(trial)));
    const Index rows = 2 + static_cast<Index>(rng.below(7));
    const Index cols = 2 + static_cast<Index>(rng.below(7));
    const ComplexImage x = random_complex_image(rows, cols, rng.next_u64());

    {
      const DiffFieldOf<Complex> dx = apply_diff(x);
      DiffFieldOf<Complex> y;
      y.vertical = random_complex_image(rows, cols, rng.next_u64());
      y.horizontal = random_complex_image(rows, cols, rng.next_u64());
      y.vertical.row(rows - 1).setZero();
      y.horizontal.col(cols - 1).setZero();
      const ComplexImage dty = apply_diff_adjoint(y);
      const Complex lhs = (y.vertical.conjugate().cwiseProduct(dx.vertical)).sum() +
                          (y.horizontal.conjugate().cwiseProduct(dx.horizontal)).sum();
      const Complex rhs = (dty.conjugate().cwiseProduct(x)).sum();
      const double scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
      const double err = std::abs(lhs - rhs) / scale;
      worst_adj = std::max(worst_adj, err);
      if (err > 1e-12) pass = false;
    }

    const double accel = 1.0 + rng.uniform01();
    const SamplingMask mask = make_cartesian_mask(rows, cols, accel, 1, rng.next_u64());
    std::optional<MeasurementOperator> op;
    if (trial % 2 == 0) {
      op.emplace(make_masked_fourier(mask));
    } else {
      op.emplace(make_multicoil(
          mask, make_synthetic_sensitivities(rows, cols, 2 + trial % 3, rng.next_u64())));
    }
    ComplexVector y(op->measurement_size());
    for (Index k = 0; k < y.size(); ++k) y[k] = Rng(rng.next_u64()).complex_normal();
    const Complex lhs = y.dot(op->forward(x));  // Eigen dot conjugates y
    const Complex rhs = (op->adjoint(y).conjugate().cwiseProduct(x)).sum();
    const double scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
    const double err = std::abs(lhs - rhs) / scale;
    worst_adj = std::max(worst_adj, err);
    if (err > 1e-12) pass = false;
  }

  // TV seminorm against the brute-force oracle on 5x7 images
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexImage x =
        random_complex_image(5, 7, mix_seed(8200, static_cast<std::uint64_t>(trial)));
    const double err = std::abs(tv_seminorm(x) - oracle::tv_bruteforce(x));
    if (err > 1e-12 * std::max(1.0, oracle::tv_bruteforce(x))) pass = false;
  }

  // scaling equivariance of the solver
  {
    const SamplingMask mask = make_cartesian_mask(12, 12, 2.0, 2, 5);
    const MeasurementOperator op = make_masked_fourier(mask);
    const ComplexImage x_star = shepp_logan(16, 16).block(2, 2, 12, 12);
    const ComplexVector b = op.forward(x_star);
    const ComplexImage w = gaussian_blur(x_star, 1.0);
    SolverConfig cfg;
    cfg.max_iters = 40;
    const double alpha = 37.5;
    const SolverResult base = solve_tvtv(op, b, w, cfg);
    const SolverResult scaled = solve_tvtv(op, alpha * b, alpha * w, cfg);
    const double rel = (scaled.x_hat - alpha * base.x_hat).matrix().norm() /
                       (alpha * base.x_hat.matrix().norm());
    if (rel > 1e-8) pass = false;
  }

  record(8, "numerical-identities", pass, fmt("worst adjoint error %.3g", worst_adj));
}

void criterion_9() {
  namespace fs = std::filesystem;
  const fs::path root =
      fs::temp_directory_path() / ("tvtv_accept_" + std::to_string(::getpid()));
  const fs::path dir_a = root / "a";
  const fs::path dir_b = root / "b";
  bool pass = run_pipeline(dir_a) && run_pipeline(dir_b);
  int files_compared = 0;
  if (pass) {
    const std::vector<std::string> artifacts = {
        "x.cimg",    "x.cimg.json",    "m.mask",            "m.mask.json",
        "b.meas",    "b.meas.json",    "w.cimg",            "w.cimg.json",
        "xhat.cimg", "xhat.cimg.json", "trace.csv",         "report.csv",
        "bound.csv", "png/reference.png", "png/xhat.png",   "png/xhat-diff.png"};
    for (const std::string& name : artifacts) {
      ++files_compared;
      if (read_binary_file((dir_a / name).string()) !=
          read_binary_file((dir_b / name).string())) {
        pass = false;
        std::fprintf(stderr, "determinism: %s differs between runs\n", name.c_str());
      }
    }
  }
  fs::remove_all(root);
  record(9, "determinism", pass, fmt("%d artifacts byte-compared", files_compared));
}

}  // namespace

int main() {
  try {
    criterion_1();
    double matrix_seconds = 0.0;
    const std::vector<MatrixCase> cases = run_case_matrix(&matrix_seconds);
    criterion_2(cases, matrix_seconds);
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6(cases);
    criterion_7();
    criterion_8();
    criterion_9();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: unhandled exception: %s\n", e.what());
    return 2;
  }
  if (g_failures == 0) {
    std::printf("ACCEPTANCE: 9/9 PASS\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", g_failures);
  return 1;
}

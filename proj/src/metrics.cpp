#include "tvtv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "tvtv/parallel.hpp"
#include "tvtv/phantom.hpp"
#include "tvtv/rng.hpp"

namespace tvtv {

void CropRegion::validate(Index image_rows, Index image_cols, const char* what) const {
  if (row_start < 0 || col_start < 0 || row_end > image_rows || col_end > image_cols ||
      row_start >= row_end || col_start >= col_end)
    throw std::invalid_argument(std::string(what) + ": crop region empty or out of bounds");
}

CropRegion support_bounding_box(const ComplexImage& img, double rel_threshold, Index margin) {
  require_valid_image(img, "support_bounding_box");
  const RealImage mag = magnitude(img);
  const double peak = mag.maxCoeff();
  if (!(peak > 0.0)) return CropRegion::full(img.rows(), img.cols());
  const double threshold = rel_threshold * peak;

  Index r0 = img.rows(), r1 = -1, c0 = img.cols(), c1 = -1;
  for (Index i = 0; i < img.rows(); ++i)
    for (Index j = 0; j < img.cols(); ++j)
      if (mag(i, j) > threshold) {
        r0 = std::min(r0, i);
        r1 = std::max(r1, i);
        c0 = std::min(c0, j);
        c1 = std::max(c1, j);
      }
  return {std::max<Index>(0, r0 - margin), std::min(img.rows(), r1 + margin + 1),
          std::max<Index>(0, c0 - margin), std::min(img.cols(), c1 + margin + 1)};
}

double consistency(const LinearOperator& op, const ComplexImage& x, const ComplexVector& b) {
  op.require_image_shape(x, "consistency");
  op.require_measurement_length(b, "consistency");
  return (op.forward(x) - b).norm();
}

namespace {

RealImage cropped_magnitude(const ComplexImage& img, const CropRegion& crop) {
  return img.block(crop.row_start, crop.col_start, crop.rows(), crop.cols()).cwiseAbs();
}

// 0/0 -> 1 so that degenerate (zero dynamic range) windows compare as equal.
double stable_ratio(double num, double den) { return den == 0.0 ? 1.0 : num / den; }

}  // namespace

double psnr(const ComplexImage& reference, const ComplexImage& test, const CropRegion& crop) {
  require_same_shape(reference, test, "psnr");
  crop.validate(reference.rows(), reference.cols(), "psnr");
  const RealImage r = cropped_magnitude(reference, crop);
  const RealImage t = cropped_magnitude(test, crop);
  const double mse = (r - t).squaredNorm() / static_cast<double>(r.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  const double peak = r.maxCoeff();
  return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const ComplexImage& reference, const ComplexImage& test, const CropRegion& crop) {
  constexpr Index kWindow = 11;
  constexpr double kSigma = 1.5, kK1 = 0.01, kK2 = 0.03;

  require_same_shape(reference, test, "ssim");
  crop.validate(reference.rows(), reference.cols(), "ssim");
  if (crop.rows() < kWindow || crop.cols() < kWindow)
    throw std::invalid_argument("ssim: crop smaller than the 11x11 window");

  const RealImage r = cropped_magnitude(reference, crop);
  const RealImage t = cropped_magnitude(test, crop);
  const double range = r.maxCoeff() - r.minCoeff();
  const double c1 = (kK1 * range) * (kK1 * range);
  const double c2 = (kK2 * range) * (kK2 * range);

  RealImage window(kWindow, kWindow);
  for (Index a = 0; a < kWindow; ++a)
    for (Index b = 0; b < kWindow; ++b) {
      const double da = static_cast<double>(a - kWindow / 2);
      const double db = static_cast<double>(b - kWindow / 2);
      window(a, b) = std::exp(-(da * da + db * db) / (2.0 * kSigma * kSigma));
    }
  window /= window.sum();

  double total = 0.0;
  Index count = 0;
  for (Index i = 0; i + kWindow <= r.rows(); ++i)
    for (Index j = 0; j + kWindow <= r.cols(); ++j) {
      const auto br = r.block(i, j, kWindow, kWindow);
      const auto bt = t.block(i, j, kWindow, kWindow);
      const double mu_r = (window.array() * br.array()).sum();
      const double mu_t = (window.array() * bt.array()).sum();
      // centered moments; roundoff-scale (co)variances are flushed to zero so
      // constant windows give an exact 0/0 -> 1 contrast-structure factor
      double rr = (window.array() * (br.array() - mu_r).square()).sum();
      double tt = (window.array() * (bt.array() - mu_t).square()).sum();
      double rt = (window.array() * (br.array() - mu_r) * (bt.array() - mu_t)).sum();
      const double flush = 1e-24 * (mu_r * mu_r + mu_t * mu_t);
      if (std::abs(rr) <= flush && std::abs(tt) <= flush && std::abs(rt) <= flush)
        rr = tt = rt = 0.0;
      const double luminance = stable_ratio(2.0 * mu_r * mu_t + c1, mu_r * mu_r + mu_t * mu_t + c1);
      const double contrast_structure = stable_ratio(2.0 * rt + c2, rr + tt + c2);
      total += luminance * contrast_structure;
      ++count;
    }
  return total / static_cast<double>(count);
}

void BoundInputs::validate() const {
  if (!std::isfinite(c) || !std::isfinite(epsilon) || !std::isfinite(c_bound) ||
      !std::isfinite(delta))
    throw std::invalid_argument("BoundInputs: values must be finite");
  if (!(c > 0.0)) throw std::invalid_argument("BoundInputs: c must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("BoundInputs: epsilon must be positive");
  if (!(c_bound > 0.0)) throw std::invalid_argument("BoundInputs: C must be positive");
  if (!(delta > 0.0 && delta < c + epsilon))
    throw std::invalid_argument("BoundInputs: delta must satisfy 0 < delta < c + epsilon");
}

double prop1_bound(const BoundInputs& inputs) {
  inputs.validate();
  const double t = inputs.c + inputs.epsilon - inputs.delta;
  return 1.0 - std::exp(-2.0 * t * t / (inputs.c_bound * inputs.c_bound));
}

ComplexImage SurrogateModel::apply(const LinearOperator& op, const ComplexVector& b) const {
  op.require_measurement_length(b, "SurrogateModel::apply");
  switch (kind) {
    case SurrogateKind::ZeroFilled: return op.adjoint(b);
    case SurrogateKind::BlurredAdjoint: return gaussian_blur(op.adjoint(b), sigma);
    case SurrogateKind::PerturbedAdjoint: {
      const ComplexImage w = op.adjoint(b);
      const ComplexImage gain =
          random_complex_image(w.rows(), w.cols(), mix_seed(seed, 0x70657274u));
      return w + perturb_scale * gain.cwiseProduct(w);
    }
    case SurrogateKind::ZeroMap:
      return ComplexImage::Zero(op.image_rows(), op.image_cols());
  }
  throw std::logic_error("unreachable");
}

std::string SurrogateModel::name() const {
  switch (kind) {
    case SurrogateKind::ZeroFilled: return "zero-filled";
    case SurrogateKind::BlurredAdjoint: return "blurred-adjoint";
    case SurrogateKind::PerturbedAdjoint: return "perturbed-adjoint";
    case SurrogateKind::ZeroMap: return "zero-map";
  }
  throw std::logic_error("unreachable");
}

SurrogateModel SurrogateModel::parse(const std::string& name) {
  SurrogateModel model;
  if (name == "zero-filled") model.kind = SurrogateKind::ZeroFilled;
  else if (name == "blurred-adjoint") model.kind = SurrogateKind::BlurredAdjoint;
  else if (name == "perturbed-adjoint") model.kind = SurrogateKind::PerturbedAdjoint;
  else if (name == "zero-map") model.kind = SurrogateKind::ZeroMap;
  else throw std::invalid_argument("unknown surrogate model: " + name);
  return model;
}

ComplexImage ImageSampler::draw(std::uint64_t seed, std::uint64_t trial) const {
  const ComplexImage base = random_complex_image(rows, cols, mix_seed(seed, trial));
  if (kind == SamplerKind::SmoothGaussian) return gaussian_blur(base, smooth_sigma);
  return base;
}

std::string ImageSampler::name() const {
  return kind == SamplerKind::GaussianComplex ? "gaussian" : "smooth-gaussian";
}

ImageSampler ImageSampler::parse(const std::string& name, Index rows, Index cols) {
  ImageSampler sampler;
  sampler.rows = rows;
  sampler.cols = cols;
  if (name == "gaussian") sampler.kind = SamplerKind::GaussianComplex;
  else if (name == "smooth-gaussian") sampler.kind = SamplerKind::SmoothGaussian;
  else throw std::invalid_argument("unknown image sampler: " + name);
  return sampler;
}

std::vector<double> monte_carlo_losses(const LinearOperator& op, const SurrogateModel& model,
                                       const ImageSampler& sampler, int trials,
                                       std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("monte_carlo_losses: trials must be positive");
  if (sampler.rows != op.image_rows() || sampler.cols != op.image_cols())
    throw ShapeMismatchError("monte_carlo_losses: sampler shape does not match operator");

  std::vector<double> losses(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](Index t) {
    const ComplexImage x = sampler.draw(seed, static_cast<std::uint64_t>(t));
    const ComplexVector bx = op.forward(x);
    const ComplexImage w = model.apply(op, bx);
    losses[static_cast<std::size_t>(t)] = (bx - op.forward(w)).squaredNorm();
  });
  return losses;
}

MonteCarloSummary summarize_losses(const std::vector<double>& losses, double delta) {
  if (losses.empty()) throw std::invalid_argument("summarize_losses: no losses");
  MonteCarloSummary s;
  s.trials = static_cast<int>(losses.size());
  double sum = 0.0;
  int hits = 0;
  for (double y : losses) {
    sum += y;
    s.max_y = std::max(s.max_y, y);
    if (y >= delta) ++hits;
  }
  s.mean_y = sum / static_cast<double>(losses.size());
  s.empirical_prob = static_cast<double>(hits) / static_cast<double>(losses.size());
  return s;
}

MonteCarloSummary prop1_monte_carlo(const LinearOperator& op, const SurrogateModel& model,
                                    const ImageSampler& sampler, double delta, int trials,
                                    std::uint64_t seed) {
  return summarize_losses(monte_carlo_losses(op, model, sampler, trials, seed), delta);
}

BoundCheckReport run_bound_check(const LinearOperator& op, const SurrogateModel& model,
                                 const ImageSampler& sampler, std::vector<double> deltas,
                                 int trials, std::uint64_t seed) {
  const std::vector<double> train =
      monte_carlo_losses(op, model, sampler, trials, mix_seed(seed, 0x747261696eu));
  const std::vector<double> eval =
      monte_carlo_losses(op, model, sampler, trials, mix_seed(seed, 0x6576616cu));

  BoundCheckReport report;
  report.model_name = model.name();
  report.sampler_name = sampler.name();
  report.trials = trials;
  report.seed = seed;
  report.margin = std::sqrt(std::log(100.0) / (2.0 * static_cast<double>(trials)));

  const MonteCarloSummary train_summary = summarize_losses(train, 1.0);
  const MonteCarloSummary eval_summary = summarize_losses(eval, 1.0);
  const double eps_train = train_summary.mean_y;
  const double l_exp = eval_summary.mean_y;
  report.c_bound_hat = std::max(train_summary.max_y, eval_summary.max_y);

  // The gap estimate l_exp - eps is noisy at the Monte-Carlo resolution
  // C * margin; a measured gap below that floor is indistinguishable from a
  // small positive one, so clamp it there while keeping c + epsilon = l_exp
  // (the only combination the bound depends on) exact.
  const double floor = report.c_bound_hat * report.margin;
  report.c_hat = std::max(l_exp - eps_train, floor);
  report.epsilon_hat = l_exp - report.c_hat;

  // A surrogate that reproduces the measurements exactly leaves only FP noise
  // in the losses (|| b - A w(b) ||^2 of order eps^2 per sample); the bound is
  // vacuous there. Unit-variance pixel draws put any genuine inconsistency far
  // above this threshold.
  const double degenerate_floor = 1e-24 * static_cast<double>(op.measurement_size());
  report.applicable = report.c_bound_hat > degenerate_floor && report.c_hat > 0.0 &&
                      report.epsilon_hat > 0.0;

  if (deltas.empty()) {
    const double base = report.applicable ? l_exp : std::max(report.c_bound_hat, 1.0);
    deltas = {0.25 * base, 0.5 * base, 0.75 * base};
  }

  report.overall_pass = true;
  for (double delta : deltas) {
    BoundCheckRow row;
    row.delta = delta;
    row.margin = report.margin;
    row.empirical = summarize_losses(eval, delta).empirical_prob;
    if (!report.applicable) {
      row.skipped = true;
      row.pass = true;
      row.note = "bound not applicable (surrogate consistent, c = epsilon = 0)";
    } else if (!(delta > 0.0 && delta < report.c_hat + report.epsilon_hat)) {
      row.skipped = true;
      row.pass = true;
      row.note = "delta outside (0, c + epsilon); skipped";
    } else {
      row.bound = prop1_bound({report.c_hat, report.epsilon_hat, report.c_bound_hat, delta});
      row.pass = row.empirical >= row.bound - row.margin;
      if (!row.pass) report.overall_pass = false;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string format_summary(const std::vector<double>& values) {
  if (values.empty()) return "n/a";
  double sum = 0.0, lo = values.front(), hi = values.front();
  for (double v : values) {
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double stddev =
      values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%.6g ± %.6g, %.6g/%.6g", mean, stddev, lo, hi);
  return buf;
}

}  // namespace tvtv

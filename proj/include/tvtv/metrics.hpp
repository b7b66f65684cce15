#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tvtv/image.hpp"
#include "tvtv/operators.hpp"

namespace tvtv {

// Half-open pixel window [row_start, row_end) x [col_start, col_end).
struct CropRegion {
  Index row_start = 0, row_end = 0, col_start = 0, col_end = 0;

  Index rows() const { return row_end - row_start; }
  Index cols() const { return col_end - col_start; }
  void validate(Index image_rows, Index image_cols, const char* what) const;

  static CropRegion full(Index image_rows, Index image_cols) {
    return {0, image_rows, 0, image_cols};
  }
};

// Bounding box of pixels with |img| > rel_threshold * max|img|, padded by
// `margin` pixels and clamped to the image; full image when img == 0.
CropRegion support_bounding_box(const ComplexImage& img, double rel_threshold = 1e-3,
                                Index margin = 2);

// ||forward(op, x) - b||_2, the measurement-consistency metric.
double consistency(const LinearOperator& op, const ComplexImage& x, const ComplexVector& b);

// Peak signal-to-noise ratio in dB between magnitude images over the crop;
// peak is the cropped reference maximum. Identical inputs return +infinity.
double psnr(const ComplexImage& reference, const ComplexImage& test, const CropRegion& crop);

// Mean single-scale SSIM between magnitude images over the crop: 11x11
// Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03, dynamic range from the
// cropped reference. Windows are evaluated only where they fit entirely
// inside the crop, which therefore must be at least 11x11.
double ssim(const ComplexImage& reference, const ComplexImage& test, const CropRegion& crop);

// -------------------------------------------------------------------------
// Inconsistency probability bound and its Monte-Carlo validation.

struct BoundInputs {
  double c = 0.0;        // generalization error, l_exp - l_emp
  double epsilon = 0.0;  // empirical loss
  double c_bound = 0.0;  // almost-sure upper bound C on the loss Y
  double delta = 0.0;    // threshold, 0 < delta < c + epsilon

  void validate() const;
};

// P(Y >= delta) >= 1 - exp(-2 (c + epsilon - delta)^2 / C^2).
double prop1_bound(const BoundInputs& inputs);

// Deterministic surrogate reconstruction maps b -> w standing in for a
// trained network. "zero-map" is the degenerate all-zero reconstructor,
// useful as a worst case with loss Y = ||b||^2.
enum class SurrogateKind { ZeroFilled, BlurredAdjoint, PerturbedAdjoint, ZeroMap };

struct SurrogateModel {
  SurrogateKind kind = SurrogateKind::ZeroFilled;
  double sigma = 1.5;           // BlurredAdjoint blur width
  double perturb_scale = 0.25;  // PerturbedAdjoint gain-field amplitude
  std::uint64_t seed = 0;       // PerturbedAdjoint gain-field seed

  ComplexImage apply(const LinearOperator& op, const ComplexVector& b) const;
  std::string name() const;
  static SurrogateModel parse(const std::string& name);
};

// Seeded distribution over complex images; draws are a pure function of
// (seed, trial) so trials can run in parallel deterministically.
enum class SamplerKind { GaussianComplex, SmoothGaussian };

struct ImageSampler {
  SamplerKind kind = SamplerKind::GaussianComplex;
  Index rows = 0, cols = 0;
  double smooth_sigma = 2.0;  // SmoothGaussian blur width

  ComplexImage draw(std::uint64_t seed, std::uint64_t trial) const;
  std::string name() const;
  static ImageSampler parse(const std::string& name, Index rows, Index cols);
};

// Per-trial losses Y_t = ||A X_t - A model(A X_t)||_2^2 for i.i.d. draws X_t.
std::vector<double> monte_carlo_losses(const LinearOperator& op, const SurrogateModel& model,
                                       const ImageSampler& sampler, int trials,
                                       std::uint64_t seed);

struct MonteCarloSummary {
  double empirical_prob = 0.0;  // fraction of trials with Y >= delta
  double mean_y = 0.0;          // estimate of l_exp
  double max_y = 0.0;           // estimate of the a.s. bound C
  int trials = 0;
};

MonteCarloSummary summarize_losses(const std::vector<double>& losses, double delta);

MonteCarloSummary prop1_monte_carlo(const LinearOperator& op, const SurrogateModel& model,
                                    const ImageSampler& sampler, double delta, int trials,
                                    std::uint64_t seed);

// Train/eval split validation of the bound: epsilon is estimated on a
// training draw, l_exp and the empirical probabilities on an independent
// evaluation draw, C as the max observed loss over both.
struct BoundCheckRow {
  double delta = 0.0;
  double empirical = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool skipped = false;  // delta outside (0, c + epsilon): noted, not failed
  bool pass = false;
  std::string note;
};

struct BoundCheckReport {
  std::string model_name;
  std::string sampler_name;
  int trials = 0;
  std::uint64_t seed = 0;
  bool applicable = false;  // false for degenerate (consistent) surrogates
  double c_hat = 0.0;
  double epsilon_hat = 0.0;
  double c_bound_hat = 0.0;
  double margin = 0.0;
  std::vector<BoundCheckRow> rows;
  bool overall_pass = false;
};

// `deltas` empty selects the grid {0.25, 0.5, 0.75} * (c_hat + epsilon_hat).
BoundCheckReport run_bound_check(const LinearOperator& op, const SurrogateModel& model,
                                 const ImageSampler& sampler, std::vector<double> deltas,
                                 int trials, std::uint64_t seed);

// "average ± std, min/max" with sample (n-1) standard deviation.
std::string format_summary(const std::vector<double>& values);

}  // namespace tvtv

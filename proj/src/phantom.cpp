#include "tvtv/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "tvtv/rng.hpp"

namespace tvtv {

namespace {

struct Ellipse {
  double intensity, a, b, x0, y0, phi_deg;
};

// Modified Shepp-Logan table (Toft contrast), additive intensities in [0, 1].
constexpr Ellipse kSheppLogan[] = {
    {1.00, 0.6900, 0.9200, 0.00, 0.0000, 0.0},
    {-0.80, 0.6624, 0.8740, 0.00, -0.0184, 0.0},
    {-0.20, 0.1100, 0.3100, 0.22, 0.0000, -18.0},
    {-0.20, 0.1600, 0.4100, -0.22, 0.0000, 18.0},
    {0.10, 0.2100, 0.2500, 0.00, 0.3500, 0.0},
    {0.10, 0.0460, 0.0460, 0.00, 0.1000, 0.0},
    {0.10, 0.0460, 0.0460, 0.00, -0.1000, 0.0},
    {0.10, 0.0460, 0.0230, -0.08, -0.6050, 0.0},
    {0.10, 0.0230, 0.0230, 0.00, -0.6060, 0.0},
    {0.10, 0.0230, 0.0460, 0.06, -0.6050, 0.0},
};

std::vector<double> gaussian_kernel(double sigma, long radius) {
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (long t = -radius; t <= radius; ++t) {
    const double v = std::exp(-0.5 * (t / sigma) * (t / sigma));
    k[static_cast<std::size_t>(t + radius)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

}  // namespace

ComplexImage shepp_logan(Index rows, Index cols) {
  if (rows < 16 || cols < 16)
    throw std::invalid_argument("shepp_logan: dimensions too small (minimum 16x16)");

  RealImage intensity = RealImage::Zero(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    // Pixel centers on the [-1, 1]^2 grid, row 0 at the top (y = +1).
    const double y = 1.0 - 2.0 * static_cast<double>(i) / static_cast<double>(rows - 1);
    for (Index j = 0; j < cols; ++j) {
      const double x = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(cols - 1);
      double value = 0.0;
      for (const Ellipse& e : kSheppLogan) {
        const double phi = e.phi_deg * std::numbers::pi / 180.0;
        const double ct = std::cos(phi), st = std::sin(phi);
        const double dx = x - e.x0, dy = y - e.y0;
        const double xr = (ct * dx + st * dy) / e.a;
        const double yr = (-st * dx + ct * dy) / e.b;
        if (xr * xr + yr * yr <= 1.0) value += e.intensity;
      }
      // overlapping signed intensities cancel to 0 only up to roundoff; clamp
      // so the advertised [0, 1] range holds exactly
      intensity(i, j) = std::clamp(value, 0.0, 1.0);
    }
  }
  return intensity.cast<Complex>();
}

ComplexImage gaussian_blur(const ComplexImage& img, double sigma) {
  require_valid_image(img, "gaussian_blur input");
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("gaussian_blur: sigma must be finite and nonnegative");
  const long radius = sigma < 0.5 ? 0 : std::lround(3.0 * sigma);
  if (radius == 0) return img;
  const std::vector<double> k = gaussian_kernel(sigma, radius);

  const Index rows = img.rows(), cols = img.cols();
  const auto clamp = [](Index i, Index n) { return std::min(std::max(i, Index{0}), n - 1); };

  ComplexImage tmp(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      Complex acc = 0.0;
      for (long t = -radius; t <= radius; ++t)
        acc += k[static_cast<std::size_t>(t + radius)] * img(clamp(i + t, rows), j);
      tmp(i, j) = acc;
    }
  ComplexImage out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      Complex acc = 0.0;
      for (long t = -radius; t <= radius; ++t)
        acc += k[static_cast<std::size_t>(t + radius)] * tmp(i, clamp(j + t, cols));
      out(i, j) = acc;
    }
  return out;
}

DegradeKind degrade_kind_from_string(const std::string& name) {
  if (name == "blur") return DegradeKind::Blur;
  if (name == "zero-filled") return DegradeKind::ZeroFilled;
  if (name == "blur-noise" || name == "blur+noise") return DegradeKind::BlurNoise;
  throw std::invalid_argument("unknown degradation kind: " + name);
}

std::string to_string(DegradeKind kind) {
  switch (kind) {
    case DegradeKind::Blur: return "blur";
    case DegradeKind::ZeroFilled: return "zero-filled";
    case DegradeKind::BlurNoise: return "blur-noise";
  }
  throw std::logic_error("unreachable");
}

ComplexImage degrade_surrogate(const ComplexImage& x_star, const LinearOperator* op,
                               DegradeKind kind, const DegradeParams& params,
                               std::uint64_t seed) {
  require_valid_image(x_star, "degrade_surrogate input");
  switch (kind) {
    case DegradeKind::Blur:
      if (!(params.sigma > 0.0))
        throw std::invalid_argument("degrade_surrogate: blur requires sigma > 0");
      return gaussian_blur(x_star, params.sigma);
    case DegradeKind::ZeroFilled: {
      if (op == nullptr)
        throw std::invalid_argument("degrade_surrogate: zero-filled requires an operator");
      op->require_image_shape(x_star, "degrade_surrogate");
      return op->adjoint(op->forward(x_star));
    }
    case DegradeKind::BlurNoise: {
      if (!(params.sigma > 0.0) || !(params.noise_level >= 0.0))
        throw std::invalid_argument(
            "degrade_surrogate: blur-noise requires sigma > 0 and noise level >= 0");
      ComplexImage w = gaussian_blur(x_star, params.sigma);
      const double peak = x_star.cwiseAbs().maxCoeff();
      const ComplexImage noise =
          random_complex_image(x_star.rows(), x_star.cols(), mix_seed(seed, 0x64656772u));
      w += (params.noise_level * peak) * noise;
      return w;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace tvtv

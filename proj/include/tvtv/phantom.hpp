#pragma once

#include <cstdint>
#include <string>

#include "tvtv/image.hpp"
#include "tvtv/operators.hpp"

namespace tvtv {

// Standard 10-ellipse Shepp-Logan intensity phantom (modified contrast
// variant, values in [0, 1]), real-valued and cast to complex with zero
// imaginary part. Throws std::invalid_argument below 16x16.
ComplexImage shepp_logan(Index rows, Index cols);

// Separable Gaussian blur with replicate (clamp) boundary. The kernel radius
// is round(3*sigma); a sigma below half a pixel degenerates to the identity.
ComplexImage gaussian_blur(const ComplexImage& img, double sigma);

// Synthetic stand-ins for an imperfect reconstruction network: they map a
// ground-truth image to a surrogate w that is generically inconsistent with
// the measurements.
enum class DegradeKind { Blur, ZeroFilled, BlurNoise };

DegradeKind degrade_kind_from_string(const std::string& name);
std::string to_string(DegradeKind kind);

struct DegradeParams {
  double sigma = 1.5;        // blur width in pixels (blur, blur-noise)
  double noise_level = 0.0;  // complex Gaussian std relative to peak |x| (blur-noise)
};

// `op` is required for the zero-filled kind (w = adjoint(forward(x))) and may
// be null for the purely image-domain kinds.
ComplexImage degrade_surrogate(const ComplexImage& x_star, const LinearOperator* op,
                               DegradeKind kind, const DegradeParams& params,
                               std::uint64_t seed);

}  // namespace tvtv

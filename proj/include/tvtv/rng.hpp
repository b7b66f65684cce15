#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "tvtv/image.hpp"

namespace tvtv {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Stream seed for trial/case `stream` derived from a base seed. Used so that
// parallel Monte-Carlo trials draw from independent, reproducible streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ull));
}

// Seeded generator with fixed sampling algorithms. std::*_distribution is
// implementation-defined, so uniforms and normals are produced explicitly to
// keep outputs identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), rejection sampled.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = gen_();
    while (x >= limit) x = gen_();
    return x % n;
  }

  // Standard normal via Box-Muller (cosine branch).
  double normal() {
    double u1 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Complex normal with unit total variance (re, im ~ N(0, 1/2)).
  Complex complex_normal() {
    return Complex(normal(), normal()) / std::sqrt(2.0);
  }

 private:
  std::mt19937_64 gen_;
};

inline ComplexImage random_complex_image(Index rows, Index cols, std::uint64_t seed) {
  Rng rng(seed);
  ComplexImage img(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) img(i, j) = rng.complex_normal();
  return img;
}

}  // namespace tvtv

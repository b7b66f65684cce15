#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tvtv/image.hpp"

namespace tvtv {

// Retained k-space locations. Row-major enumeration of the true entries fixes
// the measurement ordering.
struct SamplingMask {
  Index rows = 0;
  Index cols = 0;
  Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> kept;
  Index m = 0;

  // Generation parameters, carried along for the file header.
  std::uint64_t seed = 0;
  double acceleration = 1.0;
  Index center_lines = 0;

  double achieved_acceleration() const {
    return static_cast<double>(rows) * static_cast<double>(cols) / static_cast<double>(m);
  }
};

SamplingMask mask_from_grid(
    const Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>& kept);

// Cartesian row undersampling: the center_lines rows closest (circularly) to
// the zero-frequency row are always kept; further full rows are drawn
// uniformly at random from the seed until m >= round(rows*cols/acceleration).
SamplingMask make_cartesian_mask(Index rows, Index cols, double acceleration,
                                 Index center_lines, std::uint64_t seed);

struct CoilSensitivities {
  std::vector<ComplexImage> maps;

  Index coil_count() const { return static_cast<Index>(maps.size()); }
  Index rows() const { return maps.empty() ? 0 : maps.front().rows(); }
  Index cols() const { return maps.empty() ? 0 : maps.front().cols(); }
};

// Smooth complex Gaussian-bump profiles, pixelwise normalized so the sum of
// squared moduli is 1 everywhere.
CoilSensitivities make_synthetic_sensitivities(Index rows, Index cols, Index coil_count,
                                               std::uint64_t seed);

// Matrix-free measurement map A with exact adjoint and Euclidean projection
// onto {x : A x = b}. The default projection solves the Gram system
// (A A^H) q = A x - b by conjugate gradient and returns x - A^H q.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual Index image_rows() const = 0;
  virtual Index image_cols() const = 0;
  virtual Index measurement_size() const = 0;

  virtual ComplexVector forward(const ComplexImage& img) const = 0;
  virtual ComplexImage adjoint(const ComplexVector& y) const = 0;

  virtual ComplexImage project_consistent(const ComplexImage& img, const ComplexVector& b) const;

  void require_image_shape(const ComplexImage& img, const char* what) const;
  void require_measurement_length(const ComplexVector& y, const char* what) const;
};

enum class OperatorKind { MaskedFourier, MulticoilMaskedFourier };

std::string to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& name);

// A = S F (masked unitary Fourier; A A^H = I) or A = S F C per coil with the
// coil blocks concatenated in coil order.
class MeasurementOperator final : public LinearOperator {
 public:
  MeasurementOperator(SamplingMask mask, CoilSensitivities sens);  // multicoil
  explicit MeasurementOperator(SamplingMask mask);                 // masked-fourier

  OperatorKind kind() const { return kind_; }
  const SamplingMask& mask() const { return mask_; }
  const CoilSensitivities& sensitivities() const { return sens_; }

  Index image_rows() const override { return mask_.rows; }
  Index image_cols() const override { return mask_.cols; }
  Index measurement_size() const override;

  ComplexVector forward(const ComplexImage& img) const override;
  ComplexImage adjoint(const ComplexVector& y) const override;
  ComplexImage project_consistent(const ComplexImage& img, const ComplexVector& b) const override;

 private:
  ComplexVector gather(const ComplexImage& k) const;
  ComplexImage scatter(const ComplexVector& y, Index offset) const;

  OperatorKind kind_;
  SamplingMask mask_;
  CoilSensitivities sens_;
  std::vector<Index> kept_indices_;  // row-major offsets of retained locations
};

MeasurementOperator make_masked_fourier(SamplingMask mask);
MeasurementOperator make_multicoil(SamplingMask mask, CoilSensitivities sens);

}  // namespace tvtv

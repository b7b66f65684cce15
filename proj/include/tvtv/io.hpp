#pragma once

#include <string>
#include <vector>

#include "tvtv/image.hpp"
#include "tvtv/operators.hpp"
#include "tvtv/solver.hpp"

namespace tvtv {

// All binary formats are a JSON sidecar header plus a raw little-endian
// payload. Images: <base>.cimg.json + <base>.cimg holding row-major
// interleaved (re, im) IEEE-754 doubles, coil-major when coil_count > 1.
// Masks: <base>.mask.json + <base>.mask holding rows*cols bytes of 0/1.
// Measurements: <base>.meas.json + <base>.meas holding interleaved doubles.

std::string image_data_path(const std::string& base);
std::string image_header_path(const std::string& base);
std::string mask_data_path(const std::string& base);
std::string mask_header_path(const std::string& base);
std::string measurement_data_path(const std::string& base);
std::string measurement_header_path(const std::string& base);

void write_image(const std::string& base, const ComplexImage& img);
ComplexImage read_image(const std::string& base);

void write_coil_images(const std::string& base, const std::vector<ComplexImage>& coils);
std::vector<ComplexImage> read_coil_images(const std::string& base);

void write_mask(const std::string& base, const SamplingMask& mask);
SamplingMask read_mask(const std::string& base);

// FNV-1a 64-bit digest (hex) of the raw mask payload; stored in measurement
// headers so a measurement cannot be silently paired with the wrong mask.
std::string fnv1a64_hex(const std::string& bytes);
std::string mask_hash(const SamplingMask& mask);

struct MeasurementRecord {
  ComplexVector b;
  std::string mask_hash;
  OperatorKind kind = OperatorKind::MaskedFourier;
};

void write_measurement(const std::string& base, const ComplexVector& b,
                       const std::string& mask_hash, OperatorKind kind);
MeasurementRecord read_measurement(const std::string& base);

// Per-iteration solver diagnostics as CSV.
void write_trace_csv(const std::string& path, const SolverResult& result);

void write_text_file(const std::string& path, const std::string& text);
std::string read_binary_file(const std::string& path);

}  // namespace tvtv

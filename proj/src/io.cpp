#include "tvtv/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "json.hpp"

namespace tvtv {

static_assert(std::endian::native == std::endian::little,
              "file formats assume a little-endian host");
static_assert(sizeof(Complex) == 16, "std::complex<double> must be two packed doubles");

using nlohmann::json;

std::string image_data_path(const std::string& base) { return base + ".cimg"; }
std::string image_header_path(const std::string& base) { return base + ".cimg.json"; }
std::string mask_data_path(const std::string& base) { return base + ".mask"; }
std::string mask_header_path(const std::string& base) { return base + ".mask.json"; }
std::string measurement_data_path(const std::string& base) { return base + ".meas"; }
std::string measurement_header_path(const std::string& base) { return base + ".meas.json"; }

namespace {

void write_binary_file(const std::string& path, const char* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(data, static_cast<std::streamsize>(size));
  if (!out) throw IoError("write failed: " + path);
}

json parse_header(const std::string& path) {
  const std::string text = read_binary_file(path);
  json header = json::parse(text, nullptr, false);
  if (header.is_discarded() || !header.is_object())
    throw MalformedHeaderError("malformed header: " + path);
  return header;
}

// Narrow typed field access; anything missing or of the wrong type is a
// header defect, not a payload one.
template <class T>
T header_field(const json& header, const char* key, const std::string& path) {
  if (!header.contains(key))
    throw MalformedHeaderError("header missing field '" + std::string(key) + "': " + path);
  try {
    return header.at(key).get<T>();
  } catch (const json::exception&) {
    throw MalformedHeaderError("header field '" + std::string(key) + "' has wrong type: " + path);
  }
}

void check_payload_size(const std::string& payload, std::size_t expected,
                        const std::string& path) {
  if (payload.size() < expected) throw TruncatedPayloadError("payload truncated: " + path);
  if (payload.size() > expected)
    throw MalformedHeaderError("header/payload length mismatch: " + path);
}

void write_image_files(const std::string& base, const std::vector<ComplexImage>& coils) {
  const Index rows = coils.front().rows(), cols = coils.front().cols();
  json header{{"rows", rows},
              {"cols", cols},
              {"dtype", "c128"},
              {"layout", "row-major-interleaved"}};
  if (coils.size() > 1) header["coil_count"] = coils.size();
  write_text_file(image_header_path(base), header.dump(2) + "\n");

  std::string payload;
  payload.reserve(coils.size() * static_cast<std::size_t>(rows * cols) * sizeof(Complex));
  for (const ComplexImage& img : coils)
    payload.append(reinterpret_cast<const char*>(img.data()),
                   static_cast<std::size_t>(img.size()) * sizeof(Complex));
  write_binary_file(image_data_path(base), payload.data(), payload.size());
}

std::vector<ComplexImage> read_image_files(const std::string& base) {
  const std::string header_path = image_header_path(base);
  const json header = parse_header(header_path);
  const auto rows = header_field<Index>(header, "rows", header_path);
  const auto cols = header_field<Index>(header, "cols", header_path);
  if (rows < 1 || cols < 1)
    throw MalformedHeaderError("non-positive image dimensions: " + header_path);
  if (header_field<std::string>(header, "dtype", header_path) != "c128")
    throw DtypeMismatchError("unsupported dtype (expected c128): " + header_path);
  if (header_field<std::string>(header, "layout", header_path) != "row-major-interleaved")
    throw MalformedHeaderError("unsupported layout: " + header_path);
  Index coil_count = 1;
  if (header.contains("coil_count"))
    coil_count = header_field<Index>(header, "coil_count", header_path);
  if (coil_count < 1) throw MalformedHeaderError("non-positive coil_count: " + header_path);

  const std::string data_path = image_data_path(base);
  const std::string payload = read_binary_file(data_path);
  const std::size_t pixels = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  check_payload_size(payload, static_cast<std::size_t>(coil_count) * pixels * sizeof(Complex),
                     data_path);

  std::vector<ComplexImage> coils;
  coils.reserve(static_cast<std::size_t>(coil_count));
  for (Index c = 0; c < coil_count; ++c) {
    ComplexImage img(rows, cols);
    std::memcpy(img.data(), payload.data() + static_cast<std::size_t>(c) * pixels * sizeof(Complex),
                pixels * sizeof(Complex));
    coils.push_back(std::move(img));
  }
  return coils;
}

}  // namespace

void write_image(const std::string& base, const ComplexImage& img) {
  require_valid_image(img, "write_image");
  write_image_files(base, {img});
}

ComplexImage read_image(const std::string& base) {
  std::vector<ComplexImage> coils = read_image_files(base);
  if (coils.size() != 1)
    throw MalformedHeaderError("expected a single-coil image: " + image_header_path(base));
  return std::move(coils.front());
}

void write_coil_images(const std::string& base, const std::vector<ComplexImage>& coils) {
  if (coils.empty()) throw std::invalid_argument("write_coil_images: no coils");
  for (const ComplexImage& img : coils) {
    require_valid_image(img, "write_coil_images");
    require_same_shape(coils.front(), img, "write_coil_images");
  }
  write_image_files(base, coils);
}

std::vector<ComplexImage> read_coil_images(const std::string& base) {
  return read_image_files(base);
}

namespace {

std::string mask_payload(const SamplingMask& mask) {
  return {reinterpret_cast<const char*>(mask.kept.data()),
          static_cast<std::size_t>(mask.kept.size())};
}

}  // namespace

void write_mask(const std::string& base, const SamplingMask& mask) {
  json header{{"rows", mask.rows},          {"cols", mask.cols},
              {"m", mask.m},                {"seed", mask.seed},
              {"acceleration", mask.acceleration}, {"center_lines", mask.center_lines}};
  write_text_file(mask_header_path(base), header.dump(2) + "\n");
  const std::string payload = mask_payload(mask);
  write_binary_file(mask_data_path(base), payload.data(), payload.size());
}

SamplingMask read_mask(const std::string& base) {
  const std::string header_path = mask_header_path(base);
  const json header = parse_header(header_path);
  const auto rows = header_field<Index>(header, "rows", header_path);
  const auto cols = header_field<Index>(header, "cols", header_path);
  const auto m = header_field<Index>(header, "m", header_path);
  if (rows < 1 || cols < 1)
    throw MalformedHeaderError("non-positive mask dimensions: " + header_path);

  const std::string data_path = mask_data_path(base);
  const std::string payload = read_binary_file(data_path);
  check_payload_size(payload, static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                     data_path);

  Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> kept(rows, cols);
  for (Index i = 0; i < kept.size(); ++i) {
    const auto byte = static_cast<std::uint8_t>(payload[static_cast<std::size_t>(i)]);
    if (byte > 1) throw MalformedHeaderError("mask payload byte not 0/1: " + data_path);
    kept.data()[i] = byte;
  }
  SamplingMask mask = mask_from_grid(kept);
  if (mask.m != m) throw MalformedHeaderError("mask header m disagrees with payload: " + header_path);
  mask.seed = header_field<std::uint64_t>(header, "seed", header_path);
  mask.acceleration = header_field<double>(header, "acceleration", header_path);
  mask.center_lines = header_field<Index>(header, "center_lines", header_path);
  return mask;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char byte : bytes) {
    h ^= byte;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string mask_hash(const SamplingMask& mask) { return fnv1a64_hex(mask_payload(mask)); }

void write_measurement(const std::string& base, const ComplexVector& b,
                       const std::string& mask_hash, OperatorKind kind) {
  if (!b.allFinite()) throw std::invalid_argument("write_measurement: non-finite values");
  json header{
      {"length", b.size()}, {"mask_hash", mask_hash}, {"operator", to_string(kind)}};
  write_text_file(measurement_header_path(base), header.dump(2) + "\n");
  write_binary_file(measurement_data_path(base), reinterpret_cast<const char*>(b.data()),
                    static_cast<std::size_t>(b.size()) * sizeof(Complex));
}

MeasurementRecord read_measurement(const std::string& base) {
  const std::string header_path = measurement_header_path(base);
  const json header = parse_header(header_path);
  const auto length = header_field<Index>(header, "length", header_path);
  if (length < 1) throw MalformedHeaderError("non-positive measurement length: " + header_path);

  MeasurementRecord record;
  record.mask_hash = header_field<std::string>(header, "mask_hash", header_path);
  record.kind =
      operator_kind_from_string(header_field<std::string>(header, "operator", header_path));

  const std::string data_path = measurement_data_path(base);
  const std::string payload = read_binary_file(data_path);
  check_payload_size(payload, static_cast<std::size_t>(length) * sizeof(Complex), data_path);
  record.b.resize(length);
  std::memcpy(record.b.data(), payload.data(), payload.size());
  return record;
}

void write_trace_csv(const std::string& path, const SolverResult& result) {
  std::string csv = "iteration,objective,consistency,primal_residual,dual_residual\n";
  char line[256];
  for (std::size_t k = 0; k < result.objective_trace.size(); ++k) {
    std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g,%.17g\n", k + 1,
                  result.objective_trace[k], result.consistency_trace[k],
                  result.primal_residuals[k], result.dual_residuals[k]);
    csv += line;
  }
  write_text_file(path, csv);
}

void write_text_file(const std::string& path, const std::string& text) {
  write_binary_file(path, text.data(), text.size());
}

std::string read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path);
  return data;
}

}  // namespace tvtv

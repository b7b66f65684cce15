#include "png_writer.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "tvtv/errors.hpp"

namespace tvtv {

void write_magnitude_png(const std::string& path, const ComplexImage& img, double peak) {
  require_valid_image(img, "write_magnitude_png");
  const RealImage mag = magnitude(img);
  double scale_peak = peak;
  if (!(scale_peak > 0.0)) scale_peak = mag.maxCoeff();
  if (!(scale_peak > 0.0)) scale_peak = 1.0;

  std::unique_ptr<std::FILE, int (*)(std::FILE*)> file(std::fopen(path.c_str(), "wb"),
                                                       &std::fclose);
  if (!file) throw IoError("cannot open for writing: " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng: failed to allocate write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng: failed to allocate info struct");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng: error while writing " + path);
  }

  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.cols()),
               static_cast<png_uint_32>(img.rows()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<png_byte> row(static_cast<std::size_t>(img.cols()));
  for (Index i = 0; i < img.rows(); ++i) {
    for (Index j = 0; j < img.cols(); ++j) {
      const double v = std::clamp(mag(i, j) / scale_peak, 0.0, 1.0);
      row[static_cast<std::size_t>(j)] = static_cast<png_byte>(std::lround(v * 255.0));
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
}

}  // namespace tvtv

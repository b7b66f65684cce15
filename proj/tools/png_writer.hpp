#pragma once

#include <string>

#include "tvtv/image.hpp"

namespace tvtv {

// Writes the magnitude of a complex image as an 8-bit grayscale PNG. Values
// are mapped linearly from [0, peak] to [0, 255] and clipped; peak <= 0 asks
// for self-normalization against the image's own maximum magnitude.
void write_magnitude_png(const std::string& path, const ComplexImage& img, double peak);

}  // namespace tvtv

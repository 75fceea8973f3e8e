#pragma once

#include <string>

#include "core/types.hpp"

namespace bcos {

// Reads BMP (8-bit palette, 24/32-bit BGR, top-down or bottom-up) and PNG
// (gray, gray+alpha, palette, RGB, RGBA; 16-bit is reduced to 8). RGB inputs
// are converted to luma before scaling to [0,1].
GrayImage load_image(const std::string& path);

// 8-bit grayscale PNG, pixel = round(255 * clamp(v, 0, 1)).
void save_png(const GrayImage& image, const std::string& path);

// 0/255 grayscale PNG.
void save_png(const BinaryMap& mask, const std::string& path);

// Loads a raster and binarizes at 8-bit value > 127.
BinaryMap load_mask(const std::string& path);

}  // namespace bcos

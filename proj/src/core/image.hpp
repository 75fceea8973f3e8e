#pragma once

#include "core/types.hpp"

namespace bcos {

// True convolution with reflect-101 borders: out(p) = sum_o K(o) * I(p - o).
// Products are accumulated per symmetry orbit of the kernel grid in sorted
// order, so for kernels whose weights are symmetric under the square's
// symmetry group (all radial kernels used here) the result is bit-identical
// under 90-degree rotation and mirroring of the input.
GrayImage convolve(const GrayImage& image, const Kernel& kernel);

// Divides by the maximum when it is positive; all-zero images pass through.
// Inputs must be non-negative.
GrayImage normalize_max(const GrayImage& image);

GrayImage invert(const GrayImage& image);  // v -> 1 - v

}  // namespace bcos

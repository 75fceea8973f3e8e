#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcos {

enum class Err { Io, Format, Param, Contract, Unsupported };

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

// Crack images are dark lines on bright pavement; synthetic stimuli are the
// opposite. DarkOnBright inverts the input before the center-on DoG.
enum class Polarity { DarkOnBright, BrightOnDark };

// Row-major grayscale raster. Loaded images are scaled to [0,1]; intermediate
// response maps may exceed 1 but stay non-negative after rectification.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0)
      : width(w), height(h) {
    if (w <= 0 || h <= 0) throw Error(Err::Param, "image dimensions must be positive");
    data.assign(static_cast<size_t>(w) * static_cast<size_t>(h), fill);
  }

  double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
  size_t pixels() const { return data.size(); }
  bool empty() const { return data.empty(); }
  bool same_size(const GrayImage& o) const { return width == o.width && height == o.height; }
};

// Square, odd-sided convolution kernel, weights centered on (radius, radius).
struct Kernel {
  int radius = 0;
  std::vector<double> weights;

  Kernel() = default;
  explicit Kernel(int r) : radius(r) {
    if (r < 0) throw Error(Err::Param, "kernel radius must be >= 0");
    const int side = 2 * r + 1;
    weights.assign(static_cast<size_t>(side) * side, 0.0);
  }

  int side() const { return 2 * radius + 1; }
  double& at(int dx, int dy) { return weights[static_cast<size_t>(dy + radius) * side() + (dx + radius)]; }
  double at(int dx, int dy) const { return weights[static_cast<size_t>(dy + radius) * side() + (dx + radius)]; }
};

struct BinaryMap {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> mask;

  BinaryMap() = default;
  BinaryMap(int w, int h, bool fill = false)
      : width(w), height(h) {
    if (w <= 0 || h <= 0) throw Error(Err::Param, "mask dimensions must be positive");
    mask.assign(static_cast<size_t>(w) * static_cast<size_t>(h), fill ? 1 : 0);
  }

  bool at(int x, int y) const { return mask[static_cast<size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v) { mask[static_cast<size_t>(y) * width + x] = v ? 1 : 0; }
  size_t pixels() const { return mask.size(); }
  size_t count() const {
    size_t n = 0;
    for (uint8_t v : mask) n += v != 0;
    return n;
  }
  bool same_size(const BinaryMap& o) const { return width == o.width && height == o.height; }
};

// Per-pixel orientation index k, meaning theta = k*pi/orientations.
struct IndexMap {
  int width = 0;
  int height = 0;
  int orientations = 8;
  std::vector<uint8_t> idx;

  IndexMap() = default;
  IndexMap(int w, int h, int n = 8) : width(w), height(h), orientations(n) {
    idx.assign(static_cast<size_t>(w) * static_cast<size_t>(h), 0);
  }
  uint8_t at(int x, int y) const { return idx[static_cast<size_t>(y) * width + x]; }
  void set(int x, int y, uint8_t v) { idx[static_cast<size_t>(y) * width + x] = v; }
};

// Rotation-tolerant response map plus the per-pixel argmax orientation.
struct ResponsePair {
  GrayImage response;
  IndexMap orientation;
};

// Reflect-101 border: index -1 maps to 1, n maps to n-2. Preserves constants
// and commutes with the square's symmetries, which keeps convolution and blur
// windows exactly equivariant under 90-degree rotation and mirroring.
inline int mirror_index(int i, int n) {
  if (n == 1) return 0;
  const int p = 2 * n - 2;
  i = ((i % p) + p) % p;
  return i < n ? i : p - i;
}

}  // namespace bcos

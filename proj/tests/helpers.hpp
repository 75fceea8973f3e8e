#pragma once

#include <cmath>
#include <random>

#include "core/types.hpp"

namespace testutil {

inline bcos::GrayImage random_image(int w, int h, uint64_t seed, double lo = 0.0,
                                    double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  bcos::GrayImage img(w, h);
  for (double& v : img.data) v = dist(rng);
  return img;
}

inline bcos::BinaryMap random_mask(int w, int h, uint64_t seed, double density = 0.1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  bcos::BinaryMap m(w, h);
  for (auto& v : m.mask) v = dist(rng) < density ? 1 : 0;
  return m;
}

// Quarter turn: out(H-1-y, x) = in(x, y); out is H x W.
inline bcos::GrayImage rot90(const bcos::GrayImage& in) {
  bcos::GrayImage out(in.height, in.width);
  for (int y = 0; y < in.height; ++y)
    for (int x = 0; x < in.width; ++x) out.at(in.height - 1 - y, x) = in.at(x, y);
  return out;
}

inline bcos::GrayImage mirror_x(const bcos::GrayImage& in) {
  bcos::GrayImage out(in.width, in.height);
  for (int y = 0; y < in.height; ++y)
    for (int x = 0; x < in.width; ++x) out.at(in.width - 1 - x, y) = in.at(x, y);
  return out;
}

inline bcos::GrayImage mirror_y(const bcos::GrayImage& in) {
  bcos::GrayImage out(in.width, in.height);
  for (int y = 0; y < in.height; ++y)
    for (int x = 0; x < in.width; ++x) out.at(x, in.height - 1 - y) = in.at(x, y);
  return out;
}

// Bright bar of the given width through the image center at angle theta.
inline bcos::GrayImage bar_image(int side, double theta, double width) {
  bcos::GrayImage img(side, side);
  const double c = std::cos(theta), s = std::sin(theta);
  const double cx = (side - 1) / 2.0, cy = (side - 1) / 2.0;
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x)
      if (std::abs(-s * (x - cx) + c * (y - cy)) <= width / 2.0) img.at(x, y) = 1.0;
  return img;
}

inline double peak(const bcos::GrayImage& img) {
  double mx = 0.0;
  for (double v : img.data) mx = std::max(mx, v);
  return mx;
}

}  // namespace testutil

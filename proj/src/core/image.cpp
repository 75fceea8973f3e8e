#include "core/image.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace bcos {

namespace {

// One orbit of kernel offsets under the 8 symmetries of the square. Offsets
// store the *source* displacement (p - o for true convolution), each with its
// own weight so asymmetric kernels stay correct.
struct Orbit {
  int n = 0;
  std::array<int, 8> dx{};
  std::array<int, 8> dy{};
  std::array<double, 8> w{};
};

std::vector<Orbit> make_orbits(const Kernel& k) {
  std::vector<Orbit> orbits;
  const int r = k.radius;
  for (int x = 0; x <= r; ++x) {
    for (int y = 0; y <= x; ++y) {
      // canonical representative in the octant 0 <= y <= x
      std::set<std::pair<int, int>> members;
      int px = x, py = y;
      for (int q = 0; q < 4; ++q) {
        members.insert({px, py});
        members.insert({py, px});  // mirror across the diagonal
        const int nx = -py, ny = px;  // quarter turn
        px = nx;
        py = ny;
      }
      Orbit o;
      for (auto [mx, my] : members) {
        o.dx[o.n] = mx;
        o.dy[o.n] = my;
        o.w[o.n] = k.at(mx, my);
        ++o.n;
      }
      orbits.push_back(o);
    }
  }
  return orbits;
}

// Ascending insertion sort; identical value multisets sum identically.
inline double sorted_sum(double* v, int n) {
  for (int i = 1; i < n; ++i) {
    const double key = v[i];
    int j = i - 1;
    while (j >= 0 && v[j] > key) {
      v[j + 1] = v[j];
      --j;
    }
    v[j + 1] = key;
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += v[i];
  return s;
}

}  // namespace

GrayImage convolve(const GrayImage& image, const Kernel& kernel) {
  if (image.empty()) throw Error(Err::Param, "convolve: empty image");
  for (double w : kernel.weights)
    if (!std::isfinite(w)) throw Error(Err::Param, "convolve: kernel weights must be finite");

  const int W = image.width, H = image.height, r = kernel.radius;
  const auto orbits = make_orbits(kernel);
  GrayImage out(W, H);

  const bool has_interior = W > 2 * r && H > 2 * r;
  for (int y = 0; y < H; ++y) {
    const bool row_interior = has_interior && y >= r && y < H - r;
    for (int x = 0; x < W; ++x) {
      double total = 0.0;
      double prod[8];
      if (row_interior && x >= r && x < W - r) {
        const double* base = image.data.data() + static_cast<size_t>(y) * W + x;
        for (const Orbit& o : orbits) {
          for (int i = 0; i < o.n; ++i)
            prod[i] = o.w[i] * base[-static_cast<ptrdiff_t>(o.dy[i]) * W - o.dx[i]];
          total += sorted_sum(prod, o.n);
        }
      } else {
        for (const Orbit& o : orbits) {
          for (int i = 0; i < o.n; ++i) {
            const int sx = mirror_index(x - o.dx[i], W);
            const int sy = mirror_index(y - o.dy[i], H);
            prod[i] = o.w[i] * image.at(sx, sy);
          }
          total += sorted_sum(prod, o.n);
        }
      }
      out.at(x, y) = total;
    }
  }
  return out;
}

GrayImage normalize_max(const GrayImage& image) {
  double mx = 0.0;
  for (double v : image.data) {
    if (v < 0.0) throw Error(Err::Contract, "normalize_max: negative input value");
    mx = std::max(mx, v);
  }
  GrayImage out = image;
  if (mx > 0.0)
    for (double& v : out.data) v /= mx;
  return out;
}

GrayImage invert(const GrayImage& image) {
  GrayImage out = image;
  for (double& v : out.data) v = 1.0 - v;
  return out;
}

}  // namespace bcos

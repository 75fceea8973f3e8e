#include "core/postproc.hpp"

#include <cmath>
#include <vector>

#include "core/image.hpp"

namespace bcos {

namespace {

struct Offset {
  int dx, dy;
};

// Perpendicular of theta = k*pi/n, quantized to the 8-neighborhood.
std::vector<Offset> perpendicular_offsets(int n) {
  static const Offset kNeighbors[8] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1},
                                       {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
  std::vector<Offset> table(n);
  for (int k = 0; k < n; ++k) {
    const double perp_deg = k * 180.0 / n + 90.0;
    const int j = static_cast<int>(llround(perp_deg / 45.0)) % 8;
    table[k] = kNeighbors[j];
  }
  return table;
}

BinaryMap hysteresis_impl(const GrayImage& thinned, double t_h) {
  const int w = thinned.width, h = thinned.height;
  const double t_l = 0.5 * t_h;
  BinaryMap out(w, h);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (thinned.at(x, y) >= t_h && !out.at(x, y)) {
        out.set(x, y, true);
        stack.push_back({x, y});
        while (!stack.empty()) {
          auto [cx, cy] = stack.back();
          stack.pop_back();
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              const int nx = cx + dx, ny = cy + dy;
              if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
              if (out.at(nx, ny) || thinned.at(nx, ny) < t_l) continue;
              out.set(nx, ny, true);
              stack.push_back({nx, ny});
            }
        }
      }
  return out;
}

}  // namespace

GrayImage thin(const ResponsePair& pair) {
  const GrayImage& r = pair.response;
  const IndexMap& o = pair.orientation;
  if (r.width != o.width || r.height != o.height)
    throw Error(Err::Contract, "thin: response and orientation dimensions differ");

  const auto perp = perpendicular_offsets(o.orientations);

  const int w = r.width, h = r.height;
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double v = r.at(x, y);
      if (v <= 0.0) continue;
      const Offset d = perp[o.at(x, y)];
      const int x1 = x + d.dx, y1 = y + d.dy;
      const int x2 = x - d.dx, y2 = y - d.dy;
      const double n1 = (x1 < 0 || y1 < 0 || x1 >= w || y1 >= h) ? 0.0 : r.at(x1, y1);
      const double n2 = (x2 < 0 || y2 < 0 || x2 >= w || y2 >= h) ? 0.0 : r.at(x2, y2);
      if (v >= n1 && v >= n2) out.at(x, y) = v;
    }
  return out;
}

BinaryMap hysteresis(const GrayImage& thinned, double t_h) {
  if (!(t_h > 0.0) || t_h > 1.0) throw Error(Err::Param, "hysteresis: t_h must be in (0, 1]");
  return hysteresis_impl(thinned, t_h);
}

BinaryMap morph_close(const BinaryMap& mask) {
  const int w = mask.width, h = mask.height;
  BinaryMap dil(w, h), out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool any = false;
      for (int dy = -1; dy <= 1 && !any; ++dy)
        for (int dx = -1; dx <= 1 && !any; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          any = mask.at(nx, ny);
        }
      dil.set(x, y, any);
    }
  // erosion over in-frame neighbors only; together with the dilation above
  // this forms an adjunction on the frame, so closing stays extensive and
  // idempotent at the borders
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool all = true;
      for (int dy = -1; dy <= 1 && all; ++dy)
        for (int dx = -1; dx <= 1 && all; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          all = dil.at(nx, ny);
        }
      out.set(x, y, all);
    }
  return out;
}

Prepared prepare(const GrayImage& image, const CosfireParams& params, Polarity polarity) {
  Prepared p;
  p.pair = rotation_tolerant(normalize_max(image), params, polarity);
  p.pair.response = normalize_max(p.pair.response);
  p.thinned = thin(p.pair);
  return p;
}

BinaryMap rethreshold(const Prepared& prepared, double t_h) {
  if (t_h < 0.0 || t_h > 1.0) throw Error(Err::Param, "rethreshold: t_h must be in [0, 1]");
  return morph_close(hysteresis_impl(prepared.thinned, t_h));
}

BinaryMap delineate(const GrayImage& image, const CosfireParams& params, double t_h,
                    Polarity polarity) {
  if (!(t_h > 0.0) || t_h > 1.0) throw Error(Err::Param, "delineate: t_h must be in (0, 1]");
  return rethreshold(prepare(image, params, polarity), t_h);
}

}  // namespace bcos

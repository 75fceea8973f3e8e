#include "core/cosfire.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "core/dog.hpp"
#include "core/image.hpp"
#include "core/parallel.hpp"

namespace bcos {

namespace {

// ---------------------------------------------------------------------------
// Integer log-domain keys.
//
// Blur values are carried as keys K = round(log2(v) * 2^48). The weighted
// maximum of Eq-style Gaussian-weighted responses becomes max(K - penalty)
// with integer penalties, and the geometric mean becomes an integer key sum.
// Integer max/add are exact and order-independent, so the separable blur, the
// shift-and-combine step and the orientation maximum give bit-identical
// results under 90-degree rotation and mirroring of the input. Key resolution
// is 2^-48 in log2, a relative value error around 2e-15.
// ---------------------------------------------------------------------------

constexpr double kKeyScale = 0x1p48;
constexpr double kInvKeyScale = 0x1p-48;
constexpr int64_t kZeroKey = INT64_MIN / 4;    // value == 0
constexpr int64_t kZeroLimit = INT64_MIN / 8;  // any key below this is zero
constexpr double kLogFloor = -1024.0;          // flush denormal magnitudes

inline int64_t key_of(double v) {
  if (v == 0.0) return kZeroKey;
  const double lg = std::log2(v);
  return llround((lg < kLogFloor ? kLogFloor : lg) * kKeyScale);
}

inline double value_of(int64_t key) {
  if (key < kZeroLimit) return 0.0;
  return std::exp2(static_cast<double>(key) * kInvKeyScale);
}

using KeyPlane = std::vector<int64_t>;

KeyPlane key_plane(const GrayImage& img) {
  KeyPlane keys(img.pixels());
  for (size_t i = 0; i < keys.size(); ++i) {
    const double v = img.data[i];
    if (v < 0.0) throw Error(Err::Contract, "blur: input must be non-negative");
    keys[i] = key_of(v);
  }
  return keys;
}

// out[x] = max over |t| <= r of in[mirror(x+t)] - pen[t+r]
void row_max(const int64_t* in, int64_t* out, int n, int r, const int64_t* pen) {
  const int64_t* penc = pen + r;
  for (int x = 0; x < n; ++x) {
    int64_t best = INT64_MIN;
    if (x - r >= 0 && x + r < n) {
      const int64_t* src = in + x;
      for (int t = -r; t <= r; ++t) {
        const int64_t cand = src[t] - penc[t];
        best = cand > best ? cand : best;
      }
    } else {
      for (int t = -r; t <= r; ++t) {
        const int64_t cand = in[mirror_index(x + t, n)] - penc[t];
        best = cand > best ? cand : best;
      }
    }
    out[x] = best;
  }
}

void transpose(const KeyPlane& in, KeyPlane& out, int w, int h) {
  constexpr int B = 64;
  for (int by = 0; by < h; by += B)
    for (int bx = 0; bx < w; bx += B) {
      const int ey = std::min(by + B, h), ex = std::min(bx + B, w);
      for (int y = by; y < ey; ++y)
        for (int x = bx; x < ex; ++x)
          out[static_cast<size_t>(x) * h + y] = in[static_cast<size_t>(y) * w + x];
    }
}

// Separable Gaussian-weighted maximum (square window, radius ceil(3*sigma),
// center weight 1, mirrored borders) in the key domain.
KeyPlane blur_keys(const KeyPlane& keys, int w, int h, double sigma) {
  const int r = sigma > 0.0 ? static_cast<int>(std::ceil(3.0 * sigma)) : 0;
  if (r == 0) return keys;

  const double kappa = 1.0 / (2.0 * sigma * sigma);
  std::vector<int64_t> pen(2 * r + 1);
  for (int t = -r; t <= r; ++t)
    pen[t + r] = llround(static_cast<double>(t) * t * kappa * kKeyScale);

  KeyPlane tmp(keys.size()), tr(keys.size()), tr2(keys.size()), out(keys.size());
  parallel_for(static_cast<size_t>(h), [&](size_t y) {
    row_max(keys.data() + y * w, tmp.data() + y * w, w, r, pen.data());
  });
  transpose(tmp, tr, w, h);
  parallel_for(static_cast<size_t>(w), [&](size_t x) {
    row_max(tr.data() + x * h, tr2.data() + x * h, h, r, pen.data());
  });
  transpose(tr2, out, h, w);
  return out;
}

// ---------------------------------------------------------------------------
// Filter geometry
// ---------------------------------------------------------------------------

// Interior tuple distances eta*i, i = 1 .. floor((lambda-1)/eta) - 1.
std::vector<double> interior_rhos(const CosfireParams& p) {
  std::vector<double> rhos;
  const int lambda = p.lambda();
  const int m = (lambda - 1) / p.eta - 1;
  for (int i = 1; i <= m; ++i) rhos.push_back(static_cast<double>(p.eta) * i);
  return rhos;
}

// Off-center distances: interior rhos plus the two line ends at lambda.
std::vector<double> arm_rhos(const CosfireParams& p) {
  std::vector<double> rhos = interior_rhos(p);
  rhos.push_back(static_cast<double>(p.lambda()));
  return rhos;
}

struct Trig {
  double c, s;
};

// cos/sin of k*pi/8 built so that table[(k+4)%16] is the exact quarter-turn
// image of table[k] bit for bit; shifts derived from it therefore rotate
// exactly with the orientation index.
std::array<Trig, 16> trig_table() {
  const double c1 = std::cos(M_PI / 8.0);
  const double c2 = std::cos(M_PI / 4.0);
  const double s1 = std::sin(M_PI / 8.0);
  std::array<Trig, 16> t{};
  const double cs[16] = {1, c1, c2, s1, 0, -s1, -c2, -c1, -1, -c1, -c2, -s1, 0, s1, c2, c1};
  const double sn[16] = {0, s1, c2, c1, 1, c1, c2, s1, 0, -s1, -c2, -c1, -1, -c1, -c2, -s1};
  for (int k = 0; k < 16; ++k) t[k] = {cs[k], sn[k]};
  return t;
}

struct Term {
  int plane;  // index into the per-rho blurred planes
  int sx, sy; // sample the plane at (x + sx, y + sy)
};

// Blurred key planes for one DoG response; shared by all orientations since
// sigma' depends only on rho.
struct Engine {
  int w = 0, h = 0;
  std::vector<double> rhos;  // {0} + arm rhos, ascending
  std::vector<KeyPlane> planes;
};

Engine build_engine(const GrayImage& image, const CosfireParams& p, Polarity polarity) {
  Engine e;
  e.w = image.width;
  e.h = image.height;
  const GrayImage dog = dog_response(image, p.w, polarity);
  const KeyPlane base = key_plane(dog);
  e.rhos.push_back(0.0);
  for (double r : arm_rhos(p)) e.rhos.push_back(r);
  e.planes.resize(e.rhos.size());
  parallel_for(e.rhos.size(), [&](size_t i) {
    e.planes[i] = blur_keys(base, e.w, e.h, p.sigma0 + p.alpha * e.rhos[i]);
  });
  return e;
}

std::vector<Term> make_terms(const Engine& e, double c, double s) {
  std::vector<Term> terms;
  terms.push_back({0, 0, 0});
  for (size_t i = 1; i < e.rhos.size(); ++i) {
    const double rho = e.rhos[i];
    const int sx = static_cast<int>(llround(rho * c));
    const int sy = static_cast<int>(llround(rho * s));
    terms.push_back({static_cast<int>(i), sx, sy});
    terms.push_back({static_cast<int>(i), -sx, -sy});
  }
  return terms;
}

// Geometric mean over the terms, computed as the key average; zero as soon as
// any term is zero. The result is clamped to [min, max] of the term values.
GrayImage combine(const Engine& e, const std::vector<Term>& terms) {
  const int w = e.w, h = e.h;
  GrayImage out(w, h);
  const long double denom = static_cast<long double>(terms.size()) * static_cast<long double>(kKeyScale);
  parallel_for(static_cast<size_t>(h), [&](size_t yy) {
    const int y = static_cast<int>(yy);
    for (int x = 0; x < w; ++x) {
      __int128 acc = 0;
      int64_t kmin = INT64_MAX, kmax = INT64_MIN;
      bool zero = false;
      for (const Term& t : terms) {
        int sx = x + t.sx, sy = y + t.sy;
        if (static_cast<unsigned>(sx) >= static_cast<unsigned>(w)) sx = mirror_index(sx, w);
        if (static_cast<unsigned>(sy) >= static_cast<unsigned>(h)) sy = mirror_index(sy, h);
        const int64_t k = e.planes[t.plane][static_cast<size_t>(sy) * w + sx];
        if (k < kZeroLimit) {
          zero = true;
          break;
        }
        acc += k;
        kmin = k < kmin ? k : kmin;
        kmax = k > kmax ? k : kmax;
      }
      if (zero) {
        out.at(x, y) = 0.0;
        continue;
      }
      const double mean_log2 = static_cast<double>(static_cast<long double>(acc) / denom);
      double v = std::exp2(mean_log2);
      const double lo = value_of(kmin), hi = value_of(kmax);
      v = v < lo ? lo : (v > hi ? hi : v);
      out.at(x, y) = v;
    }
  });
  return out;
}

double wrap_2pi(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a;
}

GrayImage draw_bar(int side, double theta, double width) {
  GrayImage img(side, side);
  const double c = std::cos(theta), s = std::sin(theta);
  const double cx = (side - 1) / 2.0, cy = (side - 1) / 2.0;
  const double half = width / 2.0;
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x)
      if (std::abs(-s * (x - cx) + c * (y - cy)) <= half) img.at(x, y) = 1.0;
  return img;
}

double peak(const GrayImage& img) {
  double mx = 0.0;
  for (double v : img.data) mx = std::max(mx, v);
  return mx;
}

}  // namespace

void CosfireParams::validate() const {
  if (!(w > 0.0)) throw Error(Err::Param, "cosfire: w must be > 0");
  if (l < 3) throw Error(Err::Param, "cosfire: l must be >= 3");
  if (l % 2 == 0) throw Error(Err::Param, "cosfire: l must be odd");
  if (eta < 1 || eta > lambda())
    throw Error(Err::Param, "cosfire: eta must be in [1, (l-1)/2]");
  if (!(sigma0 >= 0.0)) throw Error(Err::Param, "cosfire: sigma0 must be >= 0");
  if (!(alpha >= 0.0)) throw Error(Err::Param, "cosfire: alpha must be >= 0");
  if (orientations < 1 || orientations > 255)
    throw Error(Err::Param, "cosfire: orientations must be in [1, 255]");
}

TupleSet configure(const CosfireParams& params, double phi) {
  params.validate();
  double base = wrap_2pi(phi);
  if (base >= M_PI) base -= M_PI;  // line orientation is mod pi

  TupleSet set;
  set.phi = base;
  set.tuples.push_back({0.0, 0.0});
  for (double rho : arm_rhos(params)) {
    set.tuples.push_back({rho, base});
    set.tuples.push_back({rho, wrap_2pi(base + M_PI)});
  }
  // collapse exact duplicates (cannot occur for valid parameters, but the
  // contract asks for a set)
  auto& t = set.tuples;
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = t.size(); j-- > i + 1;)
      if (t[j].rho == t[i].rho && t[j].angle == t[i].angle) t.erase(t.begin() + j);
  return set;
}

std::string serialize(const TupleSet& set) {
  std::string out;
  char line[64];
  for (const Tuple& t : set.tuples) {
    std::snprintf(line, sizeof(line), "%.6f %.6f\n", t.rho, t.angle);
    out += line;
  }
  return out;
}

GrayImage blur_shift(const GrayImage& dog, double rho, double angle, double sigma0, double alpha) {
  if (!(rho >= 0.0)) throw Error(Err::Param, "blur_shift: rho must be >= 0");
  if (!(sigma0 >= 0.0) || !(alpha >= 0.0))
    throw Error(Err::Param, "blur_shift: sigma0 and alpha must be >= 0");
  if (dog.empty()) throw Error(Err::Param, "blur_shift: empty image");

  const int w = dog.width, h = dog.height;
  const KeyPlane blurred = blur_keys(key_plane(dog), w, h, sigma0 + alpha * rho);
  const int sx = static_cast<int>(llround(rho * std::cos(angle)));
  const int sy = static_cast<int>(llround(rho * std::sin(angle)));
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int xx = mirror_index(x + sx, w);
      const int yy = mirror_index(y + sy, h);
      out.at(x, y) = value_of(blurred[static_cast<size_t>(yy) * w + xx]);
    }
  return out;
}

GrayImage response(const GrayImage& image, const CosfireParams& params, double phi,
                   Polarity polarity) {
  params.validate();
  if (image.empty()) throw Error(Err::Param, "response: empty image");
  const Engine e = build_engine(image, params, polarity);
  return combine(e, make_terms(e, std::cos(phi), std::sin(phi)));
}

ResponsePair rotation_tolerant(const GrayImage& image, const CosfireParams& params,
                               Polarity polarity) {
  params.validate();
  if (image.empty()) throw Error(Err::Param, "rotation_tolerant: empty image");
  const Engine e = build_engine(image, params, polarity);
  const int n = params.orientations;
  const auto table = trig_table();

  ResponsePair out;
  out.response = GrayImage(e.w, e.h);
  out.orientation = IndexMap(e.w, e.h, n);
  for (int k = 0; k < n; ++k) {
    Trig t;
    if (n == 8)
      t = table[k];
    else
      t = {std::cos(k * M_PI / n), std::sin(k * M_PI / n)};
    const GrayImage rk = combine(e, make_terms(e, t.c, t.s));
    if (k == 0) {
      out.response = rk;
      continue;
    }
    for (size_t i = 0; i < rk.data.size(); ++i) {
      if (rk.data[i] > out.response.data[i]) {
        out.response.data[i] = rk.data[i];
        out.orientation.idx[i] = static_cast<uint8_t>(k);
      }
    }
  }
  return out;
}

double orientation_bandwidth(const CosfireParams& params, int probe_size) {
  params.validate();
  const int lambda = params.lambda();
  const double sigma_max = params.sigma0 + params.alpha * lambda;
  int side = probe_size > 0 ? probe_size
                            : 2 * (lambda + static_cast<int>(std::ceil(3.0 * sigma_max))) + 9;
  side = std::max(side, params.l + 5);

  auto peak_response = [&](int deg) {
    const GrayImage bar = draw_bar(side, deg * M_PI / 180.0, params.w);
    return peak(response(bar, params, 0.0, Polarity::BrightOnDark));
  };

  const double p0 = peak_response(0);
  if (!(p0 > 0.0)) return 0.0;

  int hi = 0;
  for (int deg = 1; deg <= 90; ++deg) {
    if (peak_response(deg) >= 0.75 * p0)
      hi = deg;
    else
      break;
  }
  int lo = 0;
  for (int deg = 1; deg <= 90; ++deg) {
    if (peak_response(-deg) >= 0.75 * p0)
      lo = deg;
    else
      break;
  }
  // crossings sit between the last passing and first failing samples
  return (hi + lo + 1) * M_PI / 180.0;
}

}  // namespace bcos

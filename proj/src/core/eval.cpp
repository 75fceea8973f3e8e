#include "core/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/parallel.hpp"
#include "core/stats.hpp"

namespace bcos {

namespace {

// Felzenszwalb-Huttenlocher lower envelope of parabolas for one scanline.
// f and d hold squared distances; coordinates are small integers so doubles
// represent every intersection exactly enough for exact integer output.
void edt_pass(const int64_t* f, int n, int64_t* d, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s;
    for (;;) {
      const int p = v[k];
      s = (static_cast<double>(f[q] - f[p]) + static_cast<double>(q) * q -
           static_cast<double>(p) * p) /
          (2.0 * (q - p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const int64_t dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

std::vector<int32_t> squared_edt(const BinaryMap& mask) {
  const int w = mask.width, h = mask.height;
  const int64_t kInf = kEdtInfinity;
  std::vector<int64_t> g(static_cast<size_t>(w) * h);

  // columns
  {
    std::vector<int64_t> f(h), d(h);
    std::vector<int> v(h);
    std::vector<double> z(h + 1);
    for (int x = 0; x < w; ++x) {
      for (int y = 0; y < h; ++y) f[y] = mask.at(x, y) ? 0 : kInf;
      edt_pass(f.data(), h, d.data(), v.data(), z.data());
      for (int y = 0; y < h; ++y) g[static_cast<size_t>(y) * w + x] = std::min(d[y], kInf);
    }
  }
  // rows
  std::vector<int32_t> out(static_cast<size_t>(w) * h);
  {
    std::vector<int64_t> d(w);
    std::vector<int> v(w);
    std::vector<double> z(w + 1);
    for (int y = 0; y < h; ++y) {
      edt_pass(g.data() + static_cast<size_t>(y) * w, w, d.data(), v.data(), z.data());
      for (int x = 0; x < w; ++x)
        out[static_cast<size_t>(y) * w + x] = static_cast<int32_t>(std::min<int64_t>(d[x], kEdtInfinity));
    }
  }
  return out;
}

EvalResult match_tolerant(const BinaryMap& detected, const BinaryMap& truth, double d_star) {
  if (!detected.same_size(truth))
    throw Error(Err::Contract, "match_tolerant: dimension mismatch");
  if (!(d_star >= 0.0)) throw Error(Err::Param, "match_tolerant: d_star must be >= 0");

  const double limit = d_star * d_star;  // match iff squared distance < limit
  const auto to_truth = squared_edt(truth);
  const auto to_detected = squared_edt(detected);

  int64_t tp = 0, det = 0, fn = 0;
  for (size_t i = 0; i < detected.mask.size(); ++i) {
    if (detected.mask[i]) {
      ++det;
      if (static_cast<double>(to_truth[i]) < limit) ++tp;
    }
    if (truth.mask[i] && !(static_cast<double>(to_detected[i]) < limit)) ++fn;
  }
  return prf(tp, det - tp, fn);
}

EvalResult prf(int64_t tp, int64_t fp, int64_t fn) {
  if (tp < 0 || fp < 0 || fn < 0) throw Error(Err::Param, "prf: counts must be >= 0");
  EvalResult r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  if (tp == 0 && fp == 0 && fn == 0) {
    r.precision = r.recall = r.f_measure = 1.0;  // both maps empty
    return r;
  }
  r.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  r.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  const double sum = r.precision + r.recall;
  r.f_measure = sum > 0.0 ? 2.0 * r.precision * r.recall / sum : 0.0;
  return r;
}

SweepResult sweep(const std::vector<GrayImage>& images, const std::vector<BinaryMap>& truths,
                  const CosfireParams& params, Polarity polarity, double d_star) {
  if (images.empty()) throw Error(Err::Param, "sweep: empty dataset");
  if (images.size() != truths.size())
    throw Error(Err::Param, "sweep: images and ground truths must pair up");
  for (size_t i = 0; i < images.size(); ++i)
    if (images[i].width != truths[i].width || images[i].height != truths[i].height)
      throw Error(Err::Contract, "sweep: image/ground-truth dimension mismatch");
  params.validate();

  constexpr int kPoints = 101;
  SweepResult result;
  result.per_image.assign(images.size(), std::vector<EvalResult>(kPoints));

  parallel_for(images.size(), [&](size_t i) {
    const Prepared prep = prepare(images[i], params, polarity);
    for (int ti = 0; ti < kPoints; ++ti) {
      const double t_h = ti / 100.0;
      const BinaryMap mask = rethreshold(prep, t_h);
      result.per_image[i][ti] = match_tolerant(mask, truths[i], d_star);
    }
  });

  result.curve.resize(kPoints);
  for (int ti = 0; ti < kPoints; ++ti) {
    PrCurvePoint& pt = result.curve[ti];
    pt.t_h = ti / 100.0;
    for (size_t i = 0; i < images.size(); ++i) {
      pt.mean_precision += result.per_image[i][ti].precision;
      pt.mean_recall += result.per_image[i][ti].recall;
      pt.mean_f += result.per_image[i][ti].f_measure;
    }
    pt.mean_precision /= static_cast<double>(images.size());
    pt.mean_recall /= static_cast<double>(images.size());
    pt.mean_f /= static_cast<double>(images.size());
    if (pt.mean_f > result.curve[result.best_index].mean_f) result.best_index = ti;
  }
  return result;
}

TTestResult paired_ttest(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() != b.size()) throw Error(Err::Param, "paired_ttest: unequal lengths");
  const size_t n = a.size();
  if (n < 2) throw Error(Err::Param, "paired_ttest: need at least 2 pairs");

  double mean = 0.0;
  for (size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double d = (a[i] - b[i]) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  TTestResult r;
  r.dof = static_cast<int>(n) - 1;
  if (sd == 0.0) {
    // all differences identical: no sampling variance to test against
    r.t = mean == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), mean);
    r.p = mean == 0.0 ? 1.0 : 0.0;
  } else {
    r.t = mean / (sd / std::sqrt(static_cast<double>(n)));
    r.p = t_two_tailed_p(r.t, r.dof);
  }
  r.h = r.p < alpha ? 1 : 0;
  return r;
}

double snr_db(const GrayImage& response, const BinaryMap& signal) {
  if (response.width != signal.width || response.height != signal.height)
    throw Error(Err::Contract, "snr: dimension mismatch");
  double sum_s = 0.0, sum_n = 0.0;
  size_t n_s = 0, n_n = 0;
  for (size_t i = 0; i < response.data.size(); ++i) {
    if (signal.mask[i]) {
      sum_s += response.data[i];
      ++n_s;
    } else {
      sum_n += response.data[i];
      ++n_n;
    }
  }
  if (n_s == 0 || n_n == 0)
    throw Error(Err::Param, "snr: need at least one signal and one background pixel");
  const double a_s = sum_s / static_cast<double>(n_s);
  const double a_n = sum_n / static_cast<double>(n_n);
  if (a_s == 0.0) return -std::numeric_limits<double>::infinity();
  if (a_n == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(a_s / a_n);
}

}  // namespace bcos

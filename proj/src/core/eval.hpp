#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/cosfire.hpp"
#include "core/postproc.hpp"
#include "core/types.hpp"

namespace bcos {

struct EvalResult {
  int64_t tp = 0, fp = 0, fn = 0;
  double precision = 0.0, recall = 0.0, f_measure = 0.0;
};

// Squared Euclidean distance to the nearest set pixel (exact, two 1-D
// parabola-envelope passes). kEdtInfinity where the mask is empty.
constexpr int32_t kEdtInfinity = INT32_MAX / 4;
std::vector<int32_t> squared_edt(const BinaryMap& mask);

// Distance-tolerant counting: a detected point is a true positive when the
// nearest ground-truth point is strictly closer than d_star; ground-truth
// points with no detected point strictly within d_star are false negatives.
// Many-to-one, no bijection enforced.
EvalResult match_tolerant(const BinaryMap& detected, const BinaryMap& truth, double d_star);

// Precision, recall and their harmonic mean, with defined degenerate cases:
// all counts zero -> 1/1/1 (vacuously perfect); tp = 0 otherwise -> 0/0/0.
EvalResult prf(int64_t tp, int64_t fp, int64_t fn);

struct PrCurvePoint {
  double t_h = 0.0;
  double mean_precision = 0.0, mean_recall = 0.0, mean_f = 0.0;
};

struct SweepResult {
  std::vector<PrCurvePoint> curve;              // 101 points, t_h = 0.00 .. 1.00
  std::vector<std::vector<EvalResult>> per_image;  // [image][threshold index]
  int best_index = 0;                            // argmax mean F, lowest t_h on ties
};

// Runs the delineation pipeline once per image (response, orientation and
// thinned maps are threshold-independent) and rethresholds across the grid.
SweepResult sweep(const std::vector<GrayImage>& images, const std::vector<BinaryMap>& truths,
                  const CosfireParams& params, Polarity polarity, double d_star);

struct TTestResult {
  int h = 0;       // 1 iff p < alpha
  double p = 1.0;
  double t = 0.0;
  int dof = 0;
};

// Two-tailed paired Student t-test. All differences zero gives p = 1, h = 0;
// identical nonzero differences give p = 0, h = 1.
TTestResult paired_ttest(std::span<const double> a, std::span<const double> b,
                         double alpha = 0.05);

// 20*log10(As/An) where As is the mean response over the signal mask and An
// the mean over the rest. As = 0 -> -inf, An = 0 -> +inf.
double snr_db(const GrayImage& response, const BinaryMap& signal);

}  // namespace bcos

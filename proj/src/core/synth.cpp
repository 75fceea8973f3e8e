#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "core/eval.hpp"

namespace bcos {

namespace {

void add_noise_and_clip(GrayImage& img, double variance, uint64_t seed) {
  if (variance > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, std::sqrt(variance));
    for (double& v : img.data) v += noise(rng);
  }
  for (double& v : img.data) v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

// Ring of radius r: |dist(p, center) - r| <= half_width. With half_width 0.5
// this is the one-pixel-wide center line whose pixel count is about 2*pi*r.
BinaryMap ring_mask(int w, int h, double cx, double cy, double r, double half_width) {
  BinaryMap out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double d = std::hypot(x - cx, y - cy);
      if (std::abs(d - r) <= half_width) out.set(x, y, true);
    }
  return out;
}

BinaryMap gabor_path(const StimulusSpec& s) {
  BinaryMap out(s.width, s.height);
  const double cx = (s.width - 1) / 2.0, cy = (s.height - 1) / 2.0;
  auto fy = [&](int x) {
    const double u = x - cx;
    return cy + s.gabor.amplitude * std::exp(-u * u / (2.0 * s.gabor.envelope * s.gabor.envelope)) *
                    std::cos(2.0 * M_PI * u / s.gabor.period);
  };
  int prev = -1;
  for (int x = 0; x < s.width; ++x) {
    const int y = static_cast<int>(std::lround(fy(x)));
    if (y < 0 || y >= s.height) {
      prev = -1;
      continue;
    }
    out.set(x, y, true);
    if (prev >= 0 && std::abs(y - prev) > 1) {
      const int step = y > prev ? 1 : -1;
      for (int yy = prev + step; yy != y; yy += step) out.set(x, yy, true);
    }
    prev = y;
  }
  return out;
}

}  // namespace

void StimulusSpec::validate() const {
  if (width <= 0 || height <= 0) throw Error(Err::Param, "stimulus: dimensions must be positive");
  if (!(line_width > 0.0)) throw Error(Err::Param, "stimulus: line width must be > 0");
  if (!(noise_variance >= 0.0)) throw Error(Err::Param, "stimulus: noise variance must be >= 0");
  if (kind == StimulusKind::Circle || kind == StimulusKind::DashedCircle) {
    if (!(radius >= 0.0)) throw Error(Err::Param, "stimulus: radius must be >= 0");
    const int cx = width / 2, cy = height / 2;
    const double reach = radius + line_width / 2.0;
    const int margin = std::min(std::min(cx, cy), std::min(width - 1 - cx, height - 1 - cy));
    if (reach > margin)
      throw Error(Err::Param, "stimulus: circle does not fit inside the image");
  }
  if (kind == StimulusKind::DashedCircle) {
    if (!(gap_deg > 0.0) || !(gap_deg < 360.0))
      throw Error(Err::Param, "stimulus: gap must be in (0, 360) degrees");
    if (!(arc_gap_ratio > 0.0)) throw Error(Err::Param, "stimulus: arc/gap ratio must be > 0");
  }
  if (kind == StimulusKind::GaborCurve) {
    if (!(gabor.envelope > 0.0) || !(gabor.period > 0.0) || !(gabor.amplitude >= 0.0))
      throw Error(Err::Param, "stimulus: bad curve shape parameters");
  }
}

Stimulus generate(const StimulusSpec& spec) {
  spec.validate();
  const int w = spec.width, h = spec.height;

  Stimulus out;
  out.image = GrayImage(w, h);

  switch (spec.kind) {
    case StimulusKind::Circle:
    case StimulusKind::DashedCircle: {
      const double cx = w / 2, cy = h / 2;  // circles sit on the pixel grid
      const bool dashed = spec.kind == StimulusKind::DashedCircle;
      const double period = spec.gap_deg * (1.0 + spec.arc_gap_ratio);
      const double arc = spec.gap_deg * spec.arc_gap_ratio;
      const double half = spec.line_width / 2.0;
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const double d = std::hypot(x - cx, y - cy);
          if (std::abs(d - spec.radius) > half) continue;
          if (dashed) {
            double ang = std::atan2(y - cy, x - cx) * 180.0 / M_PI;
            if (ang < 0.0) ang += 360.0;
            if (std::fmod(ang, period) >= arc) continue;
          }
          out.image.at(x, y) = 1.0;
        }
      out.truth = ring_mask(w, h, cx, cy, spec.radius, 0.5);
      break;
    }
    case StimulusKind::GaborCurve: {
      out.truth = gabor_path(spec);
      const auto sq = squared_edt(out.truth);
      const double limit = spec.line_width * spec.line_width / 4.0;
      for (size_t i = 0; i < out.image.data.size(); ++i)
        if (static_cast<double>(sq[i]) <= limit) out.image.data[i] = 1.0;
      break;
    }
  }

  add_noise_and_clip(out.image, spec.noise_variance, spec.seed);
  return out;
}

BinaryMap arc_mask(const StimulusSpec& spec) {
  spec.validate();
  if (spec.kind == StimulusKind::GaborCurve)
    throw Error(Err::Unsupported, "arc_mask: only circle stimuli have a circumference");
  return ring_mask(spec.width, spec.height, spec.width / 2, spec.height / 2, spec.radius, 0.5);
}

}  // namespace bcos

#pragma once

#include <cstdint>

#include "core/types.hpp"

namespace bcos {

enum class StimulusKind { Circle, DashedCircle, GaborCurve };

// Free-form curve parameters for the Gabor-path stimulus:
// y(x) = cy + amplitude * exp(-(x-cx)^2 / (2*envelope^2)) * cos(2*pi*(x-cx)/period)
struct GaborShape {
  double amplitude = 80.0;
  double envelope = 90.0;
  double period = 125.0;
};

struct StimulusSpec {
  StimulusKind kind = StimulusKind::Circle;
  int width = 300;
  int height = 300;
  double radius = 100.0;
  double line_width = 5.0;
  double gap_deg = 3.0;        // dashed circles only
  double arc_gap_ratio = 4.0;  // visible arc length as a multiple of the gap
  double noise_variance = 0.0;
  uint64_t seed = 1;
  GaborShape gabor;

  void validate() const;
};

struct Stimulus {
  GrayImage image;   // bright structure (1.0) on black, noise added, clipped to [0,1]
  BinaryMap truth;   // one-pixel-wide center line (full circumference for dashed)
};

// Deterministic for a given (spec, seed).
Stimulus generate(const StimulusSpec& spec);

// Full ideal circumference, gaps included; the signal region for SNR.
BinaryMap arc_mask(const StimulusSpec& spec);

}  // namespace bcos

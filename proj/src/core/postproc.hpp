#pragma once

#include "core/cosfire.hpp"
#include "core/types.hpp"

namespace bcos {

// Non-maximum suppression across the local line direction: a pixel survives
// when its value is >= both neighbors along the direction perpendicular to
// the detected orientation (8-neighbor quantized, out-of-image neighbors
// count as 0). Expects the response normalized to [0,1].
GrayImage thin(const ResponsePair& pair);

// Two-threshold binarization, t_l = 0.5*t_h: pixels >= t_h seed regions that
// grow through 8-connected pixels >= t_l. t_h must lie in (0,1].
BinaryMap hysteresis(const GrayImage& thinned, double t_h);

// 3x3 morphological closing (dilate, then erode). Extensive and idempotent.
BinaryMap morph_close(const BinaryMap& mask);

// Filter, thin, hysteresis-threshold, close. The response map is
// max-normalized before thresholding so t_h is a fraction of the strongest
// response.
BinaryMap delineate(const GrayImage& image, const CosfireParams& params, double t_h,
                    Polarity polarity);

// The threshold-independent part of delineate, reusable across a threshold
// sweep.
struct Prepared {
  ResponsePair pair;   // normalized response + orientation map
  GrayImage thinned;
};

Prepared prepare(const GrayImage& image, const CosfireParams& params, Polarity polarity);

// hysteresis + closing on a prepared image; t_h = 0 is allowed here (every
// pixel becomes a seed), which is the sweep grid's lower endpoint.
BinaryMap rethreshold(const Prepared& prepared, double t_h);

}  // namespace bcos

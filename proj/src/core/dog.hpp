#pragma once

#include "core/types.hpp"

namespace bcos {

struct DogParams {
  double sigma = 1.0;  // outer Gaussian std-dev; inner is fixed at 0.5*sigma
  Polarity polarity = Polarity::DarkOnBright;
};

// Center-on difference of Gaussians, radius ceil(3*sigma), not renormalized
// after truncation. weight(x,y) = G_{0.5s}(x,y) - G_s(x,y).
Kernel dog_kernel(double sigma);

// Half-wave rectified DoG filtering, sigma = w / 1.92 where w is the
// preferred line width. DarkOnBright inverts the image (v -> 1-v) first.
GrayImage dog_response(const GrayImage& image, double w, Polarity polarity);

}  // namespace bcos

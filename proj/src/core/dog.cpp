#include "core/dog.hpp"

#include <cmath>

#include "core/image.hpp"

namespace bcos {

Kernel dog_kernel(double sigma) {
  if (!(sigma > 0.0)) throw Error(Err::Param, "dog_kernel: sigma must be > 0");
  const double s_in = 0.5 * sigma;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  const double inner_norm = 1.0 / (2.0 * M_PI * s_in * s_in);
  const double outer_norm = 1.0 / (2.0 * M_PI * sigma * sigma);
  const double inner_k = 1.0 / (2.0 * s_in * s_in);
  const double outer_k = 1.0 / (2.0 * sigma * sigma);

  Kernel k(radius);
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      // computed from the integer squared radius so the kernel is
      // bit-identical under the square's symmetries
      const double r2 = static_cast<double>(dx * dx + dy * dy);
      k.at(dx, dy) = std::exp(-r2 * inner_k) * inner_norm - std::exp(-r2 * outer_k) * outer_norm;
    }
  }
  return k;
}

GrayImage dog_response(const GrayImage& image, double w, Polarity polarity) {
  if (!(w > 0.0)) throw Error(Err::Param, "dog_response: line width must be > 0");
  const Kernel k = dog_kernel(w / 1.92);
  GrayImage c = polarity == Polarity::DarkOnBright ? convolve(invert(image), k) : convolve(image, k);
  for (double& v : c.data) v = v > 0.0 ? v : 0.0;
  return c;
}

}  // namespace bcos

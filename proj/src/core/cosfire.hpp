#pragma once

#include <string>
#include <vector>

#include "core/types.hpp"

namespace bcos {

struct CosfireParams {
  double w = 6.34;     // preferred line width, pixels
  int l = 29;          // preferred line length, odd >= 3
  int eta = 2;         // tuple spacing, 1 <= eta <= lambda
  double sigma0 = 2.0; // blur base std-dev
  double alpha = 1.0;  // blur growth rate
  int orientations = 8;

  int lambda() const { return (l - 1) / 2; }
  void validate() const;
};

struct Tuple {
  double rho;
  double angle;  // radians in [0, 2*pi)
};

// Positions (rho, angle) relative to the support center where blurred DoG
// responses are taken. Point-symmetric: every off-center (rho, a) is paired
// with (rho, a+pi), the two ends of the preferred line.
struct TupleSet {
  double phi = 0.0;
  std::vector<Tuple> tuples;
};

TupleSet configure(const CosfireParams& params, double phi);

// One "rho angle" pair per line, 6 decimal places.
std::string serialize(const TupleSet& set);

// Gaussian-weighted maximum over a square window of radius ceil(3*sigma'),
// sigma' = sigma0 + alpha*rho, weights scaled to 1 at the window center,
// then shifted by (round(rho*cos a), round(rho*sin a)); mirrored borders.
GrayImage blur_shift(const GrayImage& dog, double rho, double angle, double sigma0, double alpha);

// Geometric mean of the blurred and shifted DoG responses over all tuples of
// configure(params, phi). Zero wherever any tuple's response is zero.
GrayImage response(const GrayImage& image, const CosfireParams& params, double phi,
                   Polarity polarity);

// Pixel-wise maximum over `orientations` filters at theta = k*pi/n, with the
// argmax index (ties to the lowest index). With the default 8 orientations the
// response map is exactly equivariant under 90-degree rotation of the input.
ResponsePair rotation_tolerant(const GrayImage& image, const CosfireParams& params,
                               Polarity polarity);

// Full angular width (radians) around 0 over which the peak response to an
// ideal bar of width w stays at >= 75% of the unrotated peak, probed in
// 1-degree steps. probe_size 0 picks a side just covering the filter support.
double orientation_bandwidth(const CosfireParams& params, int probe_size = 0);

}  // namespace bcos

#include <doctest.h>

#include <cmath>

#include "core/eval.hpp"
#include "core/postproc.hpp"
#include "helpers.hpp"

using namespace bcos;

namespace {

ResponsePair make_pair(const GrayImage& response, int orientation_index) {
  ResponsePair pair;
  pair.response = response;
  pair.orientation = IndexMap(response.width, response.height, 8);
  for (auto& v : pair.orientation.idx) v = static_cast<uint8_t>(orientation_index);
  return pair;
}

}  // namespace

TEST_CASE("thin of an all-zero response is all zero") {
  const GrayImage zero(9, 9, 0.0);
  const GrayImage out = thin(make_pair(zero, 0));
  for (double v : out.data) CHECK(v == 0.0);
}

TEST_CASE("thin keeps only the crest of a horizontal ridge") {
  GrayImage img(12, 7, 0.0);
  for (int x = 0; x < 12; ++x) {
    img.at(x, 2) = 0.2;
    img.at(x, 3) = 1.0;
    img.at(x, 4) = 0.2;
  }
  const GrayImage out = thin(make_pair(img, 0));  // theta = 0: horizontal line
  for (int x = 0; x < 12; ++x) {
    CHECK(out.at(x, 2) == 0.0);
    CHECK(out.at(x, 3) == 1.0);
    CHECK(out.at(x, 4) == 0.0);
  }
}

TEST_CASE("thin keeps isolated pixels") {
  GrayImage img(9, 9, 0.0);
  img.at(4, 4) = 0.6;
  for (int k = 0; k < 8; ++k) {
    const GrayImage out = thin(make_pair(img, k));
    CHECK(out.at(4, 4) == 0.6);
  }
}

TEST_CASE("thin rejects mismatched dimensions") {
  ResponsePair pair;
  pair.response = GrayImage(8, 8, 0.0);
  pair.orientation = IndexMap(8, 7, 8);
  CHECK_THROWS_AS((void)thin(pair), Error);
}

TEST_CASE("thin never adds support or increases values") {
  const GrayImage img = testutil::random_image(24, 24, 17);
  ResponsePair pair;
  pair.response = img;
  pair.orientation = IndexMap(24, 24, 8);
  std::mt19937_64 rng(18);
  for (auto& v : pair.orientation.idx) v = static_cast<uint8_t>(rng() % 8);

  const GrayImage out = thin(pair);
  for (size_t i = 0; i < out.data.size(); ++i) {
    CHECK(out.data[i] <= img.data[i]);
    if (img.data[i] == 0.0) CHECK(out.data[i] == 0.0);
    CHECK((out.data[i] == 0.0 || out.data[i] == img.data[i]));
  }
}

TEST_CASE("thin survivors dominate their perpendicular neighbors in the source map") {
  const GrayImage img = testutil::random_image(20, 20, 19);
  ResponsePair pair;
  pair.response = img;
  pair.orientation = IndexMap(20, 20, 8);
  std::mt19937_64 rng(20);
  for (auto& v : pair.orientation.idx) v = static_cast<uint8_t>(rng() % 8);
  const GrayImage out = thin(pair);

  // replay: offsets mirror the implementation's fixed lookup semantics
  auto value_or_zero = [&](int x, int y) {
    return (x < 0 || y < 0 || x >= 20 || y >= 20) ? 0.0 : img.at(x, y);
  };
  const int off[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 20; ++x) {
      if (out.at(x, y) == 0.0) continue;
      const double perp_deg = pair.orientation.at(x, y) * 22.5 + 90.0;
      const int j = static_cast<int>(llround(perp_deg / 45.0)) % 8;
      CHECK(out.at(x, y) >= value_or_zero(x + off[j][0], y + off[j][1]));
      CHECK(out.at(x, y) >= value_or_zero(x - off[j][0], y - off[j][1]));
    }
}

TEST_CASE("hysteresis keeps everything when every pixel seeds") {
  GrayImage img(6, 6, 0.0);
  for (int i = 0; i < 10; ++i) img.data[i * 3 % 36] = 0.9;
  const BinaryMap out = hysteresis(img, 0.5);
  for (size_t i = 0; i < img.data.size(); ++i) CHECK(out.mask[i] == (img.data[i] > 0.0));
}

TEST_CASE("hysteresis grows weak pixels attached to seeds") {
  GrayImage img(5, 1, 0.0);
  img.data = {0.6, 0.3, 0.6, 0.0, 0.3};
  const BinaryMap out = hysteresis(img, 0.5);
  CHECK(out.at(0, 0));
  CHECK(out.at(1, 0));  // 0.3 >= t_l = 0.25 and 8-connected to a seed
  CHECK(out.at(2, 0));
  CHECK_FALSE(out.at(3, 0));
  CHECK_FALSE(out.at(4, 0));  // above t_l but disconnected
}

TEST_CASE("hysteresis discards isolated sub-seed pixels") {
  GrayImage img(7, 7, 0.0);
  img.at(3, 3) = 0.3;
  const BinaryMap out = hysteresis(img, 0.5);
  CHECK(out.count() == 0);
}

TEST_CASE("hysteresis rejects thresholds outside (0, 1]") {
  const GrayImage img(4, 4, 0.2);
  CHECK_THROWS_AS((void)hysteresis(img, 0.0), Error);
  CHECK_THROWS_AS((void)hysteresis(img, -0.2), Error);
  CHECK_THROWS_AS((void)hysteresis(img, 1.2), Error);
}

TEST_CASE("hysteresis masks shrink as the threshold grows") {
  const GrayImage img = testutil::random_image(24, 24, 99);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.01, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    double a = dist(rng), b = dist(rng);
    if (a > b) std::swap(a, b);
    const BinaryMap low = hysteresis(img, a);
    const BinaryMap high = hysteresis(img, b);
    for (size_t i = 0; i < low.mask.size(); ++i)
      if (high.mask[i]) CHECK(low.mask[i]);
  }
}

TEST_CASE("hysteresis output replays its keep rule") {
  const GrayImage img = testutil::random_image(20, 20, 55);
  const double t_h = 0.6, t_l = 0.3;
  const BinaryMap out = hysteresis(img, t_h);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 20; ++x) {
      if (!out.at(x, y)) continue;
      CHECK(img.at(x, y) >= t_l);
      // connected (within the kept set) to some seed
      bool reached_seed = false;
      std::vector<std::pair<int, int>> stack{{x, y}};
      BinaryMap seen(20, 20);
      seen.set(x, y, true);
      while (!stack.empty() && !reached_seed) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        if (img.at(cx, cy) >= t_h) {
          reached_seed = true;
          break;
        }
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= 20 || ny >= 20) continue;
            if (!out.at(nx, ny) || seen.at(nx, ny)) continue;
            seen.set(nx, ny, true);
            stack.push_back({nx, ny});
          }
      }
      CHECK(reached_seed);
    }
}

TEST_CASE("closing fills a one-pixel gap in a line") {
  BinaryMap m(11, 5);
  for (int x = 1; x < 10; ++x) m.set(x, 2, true);
  m.set(5, 2, false);
  const BinaryMap out = morph_close(m);
  CHECK(out.at(5, 2));
  for (int x = 1; x < 10; ++x) CHECK(out.at(x, 2));
}

TEST_CASE("closing leaves solid rectangles unchanged") {
  BinaryMap m(12, 9);
  for (int y = 2; y < 7; ++y)
    for (int x = 3; x < 10; ++x) m.set(x, y, true);
  const BinaryMap out = morph_close(m);
  CHECK(out.mask == m.mask);
}

TEST_CASE("closing an empty mask yields an empty mask") {
  const BinaryMap m(8, 8);
  CHECK(morph_close(m).count() == 0);
}

TEST_CASE("closing is extensive and idempotent") {
  for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const BinaryMap m = testutil::random_mask(22, 22, seed, 0.25);
    const BinaryMap once = morph_close(m);
    const BinaryMap twice = morph_close(once);
    for (size_t i = 0; i < m.mask.size(); ++i) {
      if (m.mask[i]) CHECK(once.mask[i]);  // extensive
      CHECK(twice.mask[i] == once.mask[i]);  // idempotent
    }
  }
}

TEST_CASE("delineate of a blank image is empty") {
  CosfireParams p;
  p.w = 3.0;
  p.l = 11;
  p.eta = 2;
  p.sigma0 = 1.0;
  p.alpha = 0.5;
  const GrayImage img(64, 64, 0.0);
  const BinaryMap out = delineate(img, p, 0.5, Polarity::BrightOnDark);
  CHECK(out.count() == 0);
}

TEST_CASE("delineate traces a noiseless circle as a thin closed ring") {
  CosfireParams p;
  p.w = 5.0;
  p.l = 29;
  p.eta = 2;
  p.sigma0 = 3.0;
  p.alpha = 0.5;

  const int side = 180;
  const double cx = side / 2, cy = side / 2, r = 60.0;
  GrayImage img(side, side, 0.0);
  BinaryMap ring(side, side);
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x) {
      const double d = std::hypot(x - cx, y - cy);
      if (std::abs(d - r) <= 2.5) img.at(x, y) = 1.0;
      if (std::abs(d - r) <= 0.5) ring.set(x, y, true);
    }

  const BinaryMap mask = delineate(img, p, 0.75, Polarity::BrightOnDark);
  const EvalResult res = match_tolerant(mask, ring, 2.0);
  CHECK(res.precision >= 0.8);
  CHECK(res.recall >= 0.8);
}

TEST_CASE("rethreshold reproduces delineate at matching thresholds") {
  CosfireParams p;
  p.w = 3.0;
  p.l = 11;
  p.eta = 2;
  p.sigma0 = 1.0;
  p.alpha = 0.5;
  const GrayImage img = testutil::random_image(48, 40, 1001);
  const Prepared prep = prepare(img, p, Polarity::BrightOnDark);
  for (double t_h : {0.3, 0.49, 0.75}) {
    const BinaryMap a = rethreshold(prep, t_h);
    const BinaryMap b = delineate(img, p, t_h, Polarity::BrightOnDark);
    CHECK(a.mask == b.mask);
  }
}

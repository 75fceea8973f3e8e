#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "core/image.hpp"
#include "core/image_io.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace bcos;
namespace fs = std::filesystem;

namespace {

Kernel identity_kernel() {
  Kernel k(1);
  k.at(0, 0) = 1.0;
  return k;
}

Kernel averaging_kernel() {
  Kernel k(1);
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) k.at(dx, dy) = 1.0 / 9.0;
  return k;
}

fs::path temp_file(const char* name) {
  auto dir = fs::temp_directory_path() / "bcosfire_test_image";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("mirror_index reflects without repeating the edge") {
  CHECK(mirror_index(-1, 5) == 1);
  CHECK(mirror_index(-2, 5) == 2);
  CHECK(mirror_index(0, 5) == 0);
  CHECK(mirror_index(4, 5) == 4);
  CHECK(mirror_index(5, 5) == 3);
  CHECK(mirror_index(6, 5) == 2);
  CHECK(mirror_index(-7, 3) == 1);
  CHECK(mirror_index(9, 1) == 0);
}

TEST_CASE("convolve with the identity kernel returns the image unchanged") {
  const GrayImage img = testutil::random_image(9, 7, 11);
  const GrayImage out = convolve(img, identity_kernel());
  for (size_t i = 0; i < img.data.size(); ++i) CHECK(out.data[i] == img.data[i]);
}

TEST_CASE("convolve propagates constants through the mirrored border") {
  Kernel k(2);
  auto rng = testutil::random_image(5, 5, 7, -1.0, 1.0);
  for (int i = 0; i < 25; ++i) k.weights[i] = rng.data[i];
  double sum = 0.0;
  for (double w : k.weights) sum += w;

  const GrayImage img(8, 6, 0.37);
  const GrayImage out = convolve(img, k);
  for (double v : out.data) CHECK(v == doctest::Approx(0.37 * sum).epsilon(1e-12));
}

TEST_CASE("convolve matches the hand-computed averaging example") {
  GrayImage img(5, 5, 0.0);
  img.at(2, 2) = 1.0;
  const GrayImage out = convolve(img, averaging_kernel());
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) {
      const bool inside = std::abs(x - 2) <= 1 && std::abs(y - 2) <= 1;
      CHECK(out.at(x, y) == doctest::Approx(inside ? 1.0 / 9.0 : 0.0).epsilon(1e-15));
    }
}

TEST_CASE("convolve agrees with the direct-summation oracle") {
  Kernel k(3);
  auto w = testutil::random_image(7, 7, 23, -0.5, 0.5);
  for (size_t i = 0; i < k.weights.size(); ++i) k.weights[i] = w.data[i];
  const GrayImage img = testutil::random_image(16, 12, 5);
  const GrayImage mine = convolve(img, k);
  const GrayImage ref = oracle::convolve(img, k);
  for (size_t i = 0; i < mine.data.size(); ++i)
    CHECK(mine.data[i] == doctest::Approx(ref.data[i]).epsilon(1e-12));
}

TEST_CASE("convolve is linear") {
  Kernel k(2);
  auto w = testutil::random_image(5, 5, 3, -1.0, 1.0);
  for (size_t i = 0; i < k.weights.size(); ++i) k.weights[i] = w.data[i];
  const GrayImage a = testutil::random_image(16, 16, 101);
  const GrayImage b = testutil::random_image(16, 16, 202);
  const double ca = 0.6, cb = -1.3;

  GrayImage combo(16, 16);
  for (size_t i = 0; i < combo.data.size(); ++i) combo.data[i] = ca * a.data[i] + cb * b.data[i];

  const GrayImage lhs = convolve(combo, k);
  const GrayImage ra = convolve(a, k), rb = convolve(b, k);
  for (size_t i = 0; i < lhs.data.size(); ++i)
    CHECK(lhs.data[i] == doctest::Approx(ca * ra.data[i] + cb * rb.data[i]).epsilon(1e-9));
}

TEST_CASE("convolve with a symmetric kernel commutes with mirroring exactly") {
  Kernel k(2);
  for (int dy = -2; dy <= 2; ++dy)
    for (int dx = -2; dx <= 2; ++dx) k.at(dx, dy) = std::exp(-0.3 * (dx * dx + dy * dy));
  const GrayImage img = testutil::random_image(13, 9, 77);

  const GrayImage a = testutil::mirror_x(convolve(img, k));
  const GrayImage b = convolve(testutil::mirror_x(img), k);
  for (size_t i = 0; i < a.data.size(); ++i) CHECK(a.data[i] == b.data[i]);

  const GrayImage c = testutil::mirror_y(convolve(img, k));
  const GrayImage d = convolve(testutil::mirror_y(img), k);
  for (size_t i = 0; i < c.data.size(); ++i) CHECK(c.data[i] == d.data[i]);
}

TEST_CASE("normalize_max scales by the maximum") {
  GrayImage img(3, 1);
  img.data = {0.0, 2.0, 4.0};
  const GrayImage out = normalize_max(img);
  CHECK(out.data[0] == 0.0);
  CHECK(out.data[1] == 0.5);
  CHECK(out.data[2] == 1.0);
}

TEST_CASE("normalize_max leaves all-zero images unchanged") {
  const GrayImage img(4, 4, 0.0);
  const GrayImage out = normalize_max(img);
  for (double v : out.data) CHECK(v == 0.0);
}

TEST_CASE("normalize_max maps constant images to ones") {
  const GrayImage img(2, 1, 0.2);
  const GrayImage out = normalize_max(img);
  for (double v : out.data) CHECK(v == 1.0);
}

TEST_CASE("normalize_max is idempotent") {
  const GrayImage img = testutil::random_image(12, 12, 9, 0.0, 3.0);
  const GrayImage once = normalize_max(img);
  const GrayImage twice = normalize_max(once);
  for (size_t i = 0; i < once.data.size(); ++i) CHECK(twice.data[i] == once.data[i]);
}

TEST_CASE("normalize_max rejects negative values") {
  GrayImage img(2, 2, 0.5);
  img.at(0, 1) = -0.1;
  CHECK_THROWS_AS((void)normalize_max(img), Error);
}

TEST_CASE("png round trip preserves 8-bit quantized intensities") {
  const auto path = temp_file("roundtrip.png");
  GrayImage img(17, 11);
  for (size_t i = 0; i < img.data.size(); ++i) img.data[i] = (i % 256) / 255.0;
  save_png(img, path.string());
  const GrayImage back = load_image(path.string());
  REQUIRE(back.width == 17);
  REQUIRE(back.height == 11);
  for (size_t i = 0; i < img.data.size(); ++i)
    CHECK(back.data[i] == doctest::Approx(img.data[i]).epsilon(1e-12));
}

TEST_CASE("png loader maps full scale to the unit interval") {
  const auto path = temp_file("fullscale.png");
  GrayImage img(2, 1);
  img.data = {1.0, 0.0};
  save_png(img, path.string());
  const GrayImage back = load_image(path.string());
  CHECK(back.data[0] == 1.0);  // 8-bit 255 -> 1.0
  CHECK(back.data[1] == 0.0);  // 8-bit 0 -> 0.0
}

namespace {

// Minimal 24-bit bottom-up BMP writer for loader tests.
void write_bmp24(const fs::path& path, int w, int h, const std::vector<std::array<uint8_t, 3>>& rgb) {
  const int stride = (w * 3 + 3) & ~3;
  const uint32_t data_size = stride * h;
  const uint32_t file_size = 54 + data_size;
  std::ofstream f(path, std::ios::binary);
  auto put16 = [&](uint16_t v) { f.put(v & 0xff).put(v >> 8); };
  auto put32 = [&](uint32_t v) {
    f.put(v & 0xff).put((v >> 8) & 0xff).put((v >> 16) & 0xff).put((v >> 24) & 0xff);
  };
  f.put('B').put('M');
  put32(file_size);
  put32(0);
  put32(54);
  put32(40);
  put32(static_cast<uint32_t>(w));
  put32(static_cast<uint32_t>(h));  // positive: bottom-up
  put16(1);
  put16(24);
  put32(0);
  put32(data_size);
  put32(2835);
  put32(2835);
  put32(0);
  put32(0);
  for (int row = h - 1; row >= 0; --row) {
    for (int x = 0; x < w; ++x) {
      const auto& px = rgb[static_cast<size_t>(row) * w + x];
      f.put(static_cast<char>(px[2])).put(static_cast<char>(px[1])).put(static_cast<char>(px[0]));
    }
    for (int pad = w * 3; pad < stride; ++pad) f.put(0);
  }
}

}  // namespace

TEST_CASE("bmp loader reads 24-bit files and converts by luminance") {
  const auto path = temp_file("rgb24.bmp");
  // 3x2, distinct values per pixel
  std::vector<std::array<uint8_t, 3>> rgb = {
      {{255, 255, 255}}, {{0, 0, 0}}, {{255, 0, 0}},
      {{0, 255, 0}},     {{0, 0, 255}}, {{128, 128, 128}},
  };
  write_bmp24(path, 3, 2, rgb);
  const GrayImage img = load_image(path.string());
  REQUIRE(img.width == 3);
  REQUIRE(img.height == 2);
  CHECK(img.at(0, 0) == doctest::Approx(1.0));
  CHECK(img.at(1, 0) == doctest::Approx(0.0));
  CHECK(img.at(2, 0) == doctest::Approx(0.299));
  CHECK(img.at(0, 1) == doctest::Approx(0.587));
  CHECK(img.at(1, 1) == doctest::Approx(0.114));
  CHECK(img.at(2, 1) == doctest::Approx(128.0 / 255.0));
}

TEST_CASE("loader reports missing and malformed files") {
  CHECK_THROWS_AS((void)load_image("/nonexistent/nowhere.png"), Error);

  const auto path = temp_file("garbage.dat");
  std::ofstream(path) << "this is not a raster";
  try {
    (void)load_image(path.string());
    FAIL("expected a format error");
  } catch (const Error& e) {
    CHECK(e.code() == Err::Format);
  }
}

TEST_CASE("mask loader binarizes at half scale") {
  const auto path = temp_file("mask.png");
  GrayImage img(3, 1);
  img.data = {0.1, 127.0 / 255.0, 128.0 / 255.0};
  save_png(img, path.string());
  const BinaryMap m = load_mask(path.string());
  CHECK_FALSE(m.at(0, 0));
  CHECK_FALSE(m.at(1, 0));
  CHECK(m.at(2, 0));
}

#include "core/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

namespace bcos {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

double luma(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

uint16_t rd16(const uint8_t* p) { return static_cast<uint16_t>(p[0] | (p[1] << 8)); }
uint32_t rd32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

GrayImage load_bmp(std::FILE* f, const std::string& path) {
  uint8_t header[54];
  if (std::fread(header, 1, 54, f) != 54) throw Error(Err::Format, path + ": truncated BMP header");
  const uint32_t data_offset = rd32(header + 10);
  const uint32_t dib_size = rd32(header + 14);
  if (dib_size < 40) throw Error(Err::Format, path + ": unsupported BMP header");
  const int32_t w = static_cast<int32_t>(rd32(header + 18));
  const int32_t h_raw = static_cast<int32_t>(rd32(header + 22));
  const bool top_down = h_raw < 0;
  const int32_t h = top_down ? -h_raw : h_raw;
  const uint16_t bpp = rd16(header + 28);
  const uint32_t compression = rd32(header + 30);
  if (w <= 0 || h <= 0) throw Error(Err::Format, path + ": bad BMP dimensions");
  if (compression != 0) throw Error(Err::Format, path + ": compressed BMP not supported");
  if (bpp != 8 && bpp != 24 && bpp != 32)
    throw Error(Err::Format, path + ": only 8/24/32-bit BMP supported");

  // palette (8-bit only), located right after the DIB header
  std::vector<double> palette;
  if (bpp == 8) {
    uint32_t colors = rd32(header + 46);
    if (colors == 0) colors = 256;
    if (std::fseek(f, 14 + static_cast<long>(dib_size), SEEK_SET) != 0)
      throw Error(Err::Format, path + ": truncated BMP");
    std::vector<uint8_t> pal(colors * 4);
    if (std::fread(pal.data(), 1, pal.size(), f) != pal.size())
      throw Error(Err::Format, path + ": truncated BMP palette");
    palette.resize(256, 0.0);
    for (uint32_t i = 0; i < colors && i < 256; ++i)
      palette[i] = luma(pal[i * 4 + 2], pal[i * 4 + 1], pal[i * 4 + 0]) / 255.0;
  }

  const size_t bytes_per_px = bpp / 8;
  const size_t row_stride = (static_cast<size_t>(w) * bytes_per_px + 3) & ~size_t(3);
  if (std::fseek(f, static_cast<long>(data_offset), SEEK_SET) != 0)
    throw Error(Err::Format, path + ": truncated BMP");

  GrayImage img(w, h);
  std::vector<uint8_t> row(row_stride);
  for (int ry = 0; ry < h; ++ry) {
    if (std::fread(row.data(), 1, row_stride, f) != row_stride)
      throw Error(Err::Format, path + ": truncated BMP pixel data");
    const int y = top_down ? ry : h - 1 - ry;
    for (int x = 0; x < w; ++x) {
      const uint8_t* px = row.data() + static_cast<size_t>(x) * bytes_per_px;
      double v;
      if (bpp == 8)
        v = palette[px[0]];
      else
        v = luma(px[2], px[1], px[0]) / 255.0;  // BGR(A)
      img.at(x, y) = v;
    }
  }
  return img;
}

GrayImage load_png(std::FILE* f, const std::string& path) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error(Err::Io, path + ": libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error(Err::Io, path + ": libpng init failed");
  }
  std::vector<uint8_t> raster;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(Err::Format, path + ": invalid PNG");
  }
  png_init_io(png, f);
  png_read_info(png, info);

  png_set_strip_16(png);
  png_set_packing(png);
  const int color = png_get_color_type(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const png_uint_32 channels = png_get_channels(png, info);
  const size_t stride = png_get_rowbytes(png, info);
  raster.resize(stride * h);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = raster.data() + stride * y;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  GrayImage img(static_cast<int>(w), static_cast<int>(h));
  for (png_uint_32 y = 0; y < h; ++y) {
    const uint8_t* row = raster.data() + stride * y;
    for (png_uint_32 x = 0; x < w; ++x) {
      const uint8_t* px = row + x * channels;
      double v = channels >= 3 ? luma(px[0], px[1], px[2]) / 255.0 : px[0] / 255.0;
      img.at(static_cast<int>(x), static_cast<int>(y)) = v;
    }
  }
  return img;
}

void write_png_gray8(const uint8_t* data, int w, int h, const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw Error(Err::Io, path + ": cannot open for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error(Err::Io, path + ": libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(Err::Io, path + ": libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(Err::Io, path + ": PNG write failed");
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, w, h, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < h; ++y)
    png_write_row(png, const_cast<png_bytep>(data + static_cast<size_t>(y) * w));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

GrayImage load_image(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw Error(Err::Io, path + ": cannot open");
  uint8_t magic[8] = {0};
  const size_t n = std::fread(magic, 1, 8, f.get());
  std::rewind(f.get());
  if (n >= 2 && magic[0] == 'B' && magic[1] == 'M') return load_bmp(f.get(), path);
  if (n >= 8 && png_sig_cmp(magic, 0, 8) == 0) return load_png(f.get(), path);
  throw Error(Err::Format, path + ": unsupported raster format (need BMP or PNG)");
}

void save_png(const GrayImage& image, const std::string& path) {
  if (image.empty()) throw Error(Err::Param, "save_png: empty image");
  std::vector<uint8_t> bytes(image.pixels());
  for (size_t i = 0; i < bytes.size(); ++i) {
    double v = image.data[i];
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    bytes[i] = static_cast<uint8_t>(std::lround(255.0 * v));
  }
  write_png_gray8(bytes.data(), image.width, image.height, path);
}

void save_png(const BinaryMap& mask, const std::string& path) {
  if (mask.pixels() == 0) throw Error(Err::Param, "save_png: empty mask");
  std::vector<uint8_t> bytes(mask.pixels());
  for (size_t i = 0; i < bytes.size(); ++i) bytes[i] = mask.mask[i] ? 255 : 0;
  write_png_gray8(bytes.data(), mask.width, mask.height, path);
}

BinaryMap load_mask(const std::string& path) {
  const GrayImage img = load_image(path);
  BinaryMap out(img.width, img.height);
  for (size_t i = 0; i < img.pixels(); ++i) out.mask[i] = img.data[i] > 127.0 / 255.0 ? 1 : 0;
  return out;
}

}  // namespace bcos

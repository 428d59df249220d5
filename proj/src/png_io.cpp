#include "superstyle/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>
#include <string>

#include "superstyle/errors.hpp"

namespace superstyle {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_file(const std::filesystem::path& path, const char* mode) {
  File f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open " + path.string());
  return f;
}

struct Decoded {
  int width = 0;
  int height = 0;
  int bit_depth = 0;
  int color_type = 0;
  int channels = 0;
  std::vector<png_byte> rows;  // tightly packed
};

enum class Want { kRgb8, kGrayRaw };

Decoded decode(const std::filesystem::path& path, Want want) {
  File file = open_file(path, "rb");
  png_byte sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw IoError(path.string() + " is not a PNG file");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng: out of memory");
  png_infop info = png_create_info_struct(png);
  Decoded out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("failed to decode " + path.string());
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.bit_depth = png_get_bit_depth(png, info);
  out.color_type = png_get_color_type(png, info);

  if (want == Want::kRgb8) {
    if (out.color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (out.color_type == PNG_COLOR_TYPE_GRAY || out.color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
    if (out.bit_depth < 8) png_set_expand(png);
    if (out.bit_depth == 16) png_set_strip_16(png);
    png_set_strip_alpha(png);
  } else {
    if (out.color_type != PNG_COLOR_TYPE_GRAY) {
      png_destroy_read_struct(&png, &info, nullptr);
      throw IoError(path.string() + " is not a grayscale PNG");
    }
    if (out.bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (out.bit_depth == 16) png_set_swap(png);  // host order is little-endian below
  }
  png_read_update_info(png, info);
  out.channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  out.rows.resize(stride * out.height);
  std::vector<png_bytep> pointers(out.height);
  for (int y = 0; y < out.height; ++y) pointers[y] = out.rows.data() + stride * y;
  png_read_image(png, pointers.data());
  png_read_end(png, nullptr);
  out.bit_depth = png_get_bit_depth(png, info);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

void encode(const std::filesystem::path& path, int width, int height, int bit_depth, int color_type,
            const std::vector<png_byte>& rows, std::size_t stride) {
  File file = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng: out of memory");
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("failed to encode " + path.string());
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) png_write_row(png, rows.data() + stride * y);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fflush(file.get()) != 0) throw IoError("failed to write " + path.string());
}

}  // namespace

RgbImage read_rgb_png(const std::filesystem::path& path) {
  Decoded d = decode(path, Want::kRgb8);
  if (d.channels != 3 || d.bit_depth != 8) throw IoError(path.string() + ": unsupported PNG layout");
  return RgbImage(d.width, d.height, std::move(d.rows));
}

void write_rgb_png(const std::filesystem::path& path, const RgbImage& img) {
  encode(path, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, img.data, static_cast<std::size_t>(img.width) * 3);
}

SemanticMask read_mask_png(const std::filesystem::path& path, int label_count) {
  Decoded d = decode(path, Want::kGrayRaw);
  if (d.bit_depth != 8) throw IoError(path.string() + ": label masks must be 8-bit grayscale");
  std::vector<std::uint16_t> labels(d.rows.begin(), d.rows.end());
  if (label_count <= 0) return SemanticMask::from_labels(d.width, d.height, std::move(labels));
  for (auto l : labels)
    if (l >= label_count)
      throw DimensionMismatch(path.string() + " contains label " + std::to_string(l) + " but label count is " +
                              std::to_string(label_count));
  return SemanticMask(d.width, d.height, label_count, std::move(labels));
}

void write_mask_png(const std::filesystem::path& path, const SemanticMask& mask) {
  std::vector<png_byte> rows(mask.pixel_count());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (mask[i] > 255) throw DimensionMismatch("label " + std::to_string(mask[i]) + " does not fit an 8-bit mask");
    rows[i] = static_cast<png_byte>(mask[i]);
  }
  encode(path, mask.width(), mask.height(), 8, PNG_COLOR_TYPE_GRAY, rows, static_cast<std::size_t>(mask.width()));
}

Gray16Image read_gray16_png(const std::filesystem::path& path) {
  Decoded d = decode(path, Want::kGrayRaw);
  if (d.bit_depth != 16) throw IoError(path.string() + ": expected a 16-bit grayscale PNG");
  Gray16Image out{d.width, d.height, std::vector<std::uint16_t>(static_cast<std::size_t>(d.width) * d.height)};
  for (std::size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = static_cast<std::uint16_t>(d.rows[2 * i] | (d.rows[2 * i + 1] << 8));
  return out;
}

void write_gray16_png(const std::filesystem::path& path, const Gray16Image& img) {
  // PNG stores 16-bit samples big-endian.
  std::vector<png_byte> rows(img.data.size() * 2);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    rows[2 * i] = static_cast<png_byte>(img.data[i] >> 8);
    rows[2 * i + 1] = static_cast<png_byte>(img.data[i] & 0xff);
  }
  encode(path, img.width, img.height, 16, PNG_COLOR_TYPE_GRAY, rows, static_cast<std::size_t>(img.width) * 2);
}

}  // namespace superstyle

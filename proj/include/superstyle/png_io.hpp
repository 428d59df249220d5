#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "superstyle/image.hpp"

namespace superstyle {

struct Gray16Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> data;
};

// Any PNG is accepted and converted to 8-bit RGB (alpha dropped, gray expanded).
RgbImage read_rgb_png(const std::filesystem::path& path);
void write_rgb_png(const std::filesystem::path& path, const RgbImage& img);

// 8-bit grayscale PNG whose pixel values are label indices. label_count <= 0
// means max(label) + 1.
SemanticMask read_mask_png(const std::filesystem::path& path, int label_count = 0);
void write_mask_png(const std::filesystem::path& path, const SemanticMask& mask);

Gray16Image read_gray16_png(const std::filesystem::path& path);
void write_gray16_png(const std::filesystem::path& path, const Gray16Image& img);

}  // namespace superstyle

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace superstyle {

// 8-bit sRGB image, row-major, three interleaved channels per pixel.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h);
  RgbImage(int w, int h, std::vector<std::uint8_t> pixels);

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
  std::uint8_t* at(int x, int y) { return data.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
  const std::uint8_t* at(int x, int y) const {
    return data.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }

  bool operator==(const RgbImage&) const = default;
};

// Per-pixel [l, a, b, x, y] features.
struct LabXyImage {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
  const double* pixel(std::size_t index) const { return data.data() + 5 * index; }
};

// Per-pixel label map. Every stored label is < label_count.
class SemanticMask {
 public:
  SemanticMask() = default;
  // Throws DimensionMismatch on size disagreement and std::invalid_argument
  // when a label is out of range.
  SemanticMask(int width, int height, int label_count, std::vector<std::uint16_t> labels);

  // label_count is taken as max(label) + 1.
  static SemanticMask from_labels(int width, int height, std::vector<std::uint16_t> labels);

  int width() const { return width_; }
  int height() const { return height_; }
  int label_count() const { return label_count_; }
  std::size_t pixel_count() const { return labels_.size(); }
  std::uint16_t operator[](std::size_t index) const { return labels_[index]; }
  std::uint16_t at(int x, int y) const { return labels_[static_cast<std::size_t>(y) * width_ + x]; }
  const std::vector<std::uint16_t>& labels() const { return labels_; }

  std::size_t count(int label) const;
  std::vector<std::size_t> pixels_of(int label) const;

 private:
  int width_ = 0;
  int height_ = 0;
  int label_count_ = 0;
  std::vector<std::uint16_t> labels_;
};

}  // namespace superstyle

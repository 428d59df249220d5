#include "superstyle/image.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "superstyle/errors.hpp"

namespace superstyle {

RgbImage::RgbImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {
  if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
}

RgbImage::RgbImage(int w, int h, std::vector<std::uint8_t> pixels) : width(w), height(h), data(std::move(pixels)) {
  if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
  if (data.size() != static_cast<std::size_t>(w) * h * 3)
    throw DimensionMismatch("rgb buffer holds " + std::to_string(data.size()) + " bytes, expected " +
                            std::to_string(static_cast<std::size_t>(w) * h * 3));
}

SemanticMask::SemanticMask(int width, int height, int label_count, std::vector<std::uint16_t> labels)
    : width_(width), height_(height), label_count_(label_count), labels_(std::move(labels)) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("mask dimensions must be positive");
  if (label_count <= 0) throw std::invalid_argument("label_count must be positive");
  if (labels_.size() != static_cast<std::size_t>(width) * height)
    throw DimensionMismatch("mask holds " + std::to_string(labels_.size()) + " labels, expected " +
                            std::to_string(static_cast<std::size_t>(width) * height));
  for (auto label : labels_) {
    if (label >= label_count)
      throw std::invalid_argument("mask label " + std::to_string(label) + " >= label_count " +
                                  std::to_string(label_count));
  }
}

SemanticMask SemanticMask::from_labels(int width, int height, std::vector<std::uint16_t> labels) {
  int top = 0;
  for (auto label : labels) top = std::max<int>(top, label);
  return SemanticMask(width, height, top + 1, std::move(labels));
}

std::size_t SemanticMask::count(int label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

std::vector<std::size_t> SemanticMask::pixels_of(int label) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) out.push_back(i);
  return out;
}

}  // namespace superstyle

#pragma once

#include <span>
#include <vector>

#include "superstyle/image.hpp"
#include "superstyle/mask_slic.hpp"

namespace superstyle {

inline constexpr int kDefaultCodeLength = 512;

struct LabelCode {
  int id = 0;
  bool present = false;
  // Mean RGB per superpixel in [0, 1], channel-interleaved [r0, g0, b0, r1, ...].
  std::vector<double> raw;
  // raw resampled to the code length.
  std::vector<double> code;

  bool operator==(const LabelCode&) const = default;
};

struct StyleCodes {
  int n = kDefaultCodeLength;
  int k = kDefaultSuperpixels;
  std::vector<LabelCode> labels;

  int label_count() const { return static_cast<int>(labels.size()); }
  bool operator==(const StyleCodes&) const = default;
};

// All-absent codes: zero vectors of length n.
StyleCodes empty_codes(int label_count, int n, int k);

// Piecewise-linear resampling of raw (samples at j / (m - 1)) onto n evenly
// spaced points. Returns raw unchanged when the lengths agree.
std::vector<double> resample_code(std::span<const double> raw, int n);

// Per-superpixel mean colors of img, flattened and resampled to n entries per label.
StyleCodes extract_style_codes(const RgbImage& img, const SemanticMask& mask, const SuperpixelMap& spmap, int n,
                               int k = kDefaultSuperpixels);

// Full pipeline: color conversion, clustering, extraction.
StyleCodes encode_style(const RgbImage& img, const SemanticMask& mask, const SlicOptions& options, int n,
                        SuperpixelMap* spmap_out = nullptr);

}  // namespace superstyle

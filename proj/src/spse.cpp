#include "superstyle/spse.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "superstyle/color.hpp"
#include "superstyle/errors.hpp"

namespace superstyle {

StyleCodes empty_codes(int label_count, int n, int k) {
  StyleCodes codes;
  codes.n = n;
  codes.k = k;
  codes.labels.resize(label_count);
  for (int l = 0; l < label_count; ++l) {
    codes.labels[l].id = l;
    codes.labels[l].code.assign(n, 0.0);
  }
  return codes;
}

std::vector<double> resample_code(std::span<const double> raw, int n) {
  if (raw.empty()) throw EmptyInput("cannot resample an empty code");
  if (n < 1) throw std::invalid_argument("code length must be positive");
  const std::size_t m = raw.size();
  if (m == static_cast<std::size_t>(n)) return {raw.begin(), raw.end()};
  std::vector<double> out(n);
  if (m == 1 || n == 1) {
    std::fill(out.begin(), out.end(), raw[0]);
    return out;
  }
  // Position of output i on the raw axis is i * (m - 1) / (n - 1); keep it in integers.
  const std::size_t span = static_cast<std::size_t>(n - 1);
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    const std::size_t scaled = i * (m - 1);
    const std::size_t j = scaled / span;
    const std::size_t rem = scaled % span;
    if (rem == 0) {
      out[i] = raw[j];
      continue;
    }
    const double lo = raw[j], hi = raw[j + 1];
    const double t = static_cast<double>(rem) / static_cast<double>(span);
    out[i] = std::clamp(lo + t * (hi - lo), std::min(lo, hi), std::max(lo, hi));
  }
  return out;
}

StyleCodes extract_style_codes(const RgbImage& img, const SemanticMask& mask, const SuperpixelMap& spmap, int n,
                               int k) {
  if (n < 3) throw std::invalid_argument("code length n must be >= 3");
  if (img.width != mask.width() || img.height != mask.height())
    throw DimensionMismatch("image is " + std::to_string(img.width) + "x" + std::to_string(img.height) +
                            " but mask is " + std::to_string(mask.width()) + "x" + std::to_string(mask.height()));
  check_consistent(spmap, mask);

  const int labels = mask.label_count();
  const auto offsets = spmap.label_offsets();
  const std::size_t total = static_cast<std::size_t>(spmap.total_clusters());
  std::vector<std::uint64_t> sums(total * 3, 0);
  std::vector<std::uint64_t> counts(total, 0);
  for (std::size_t i = 0; i < mask.pixel_count(); ++i) {
    const std::size_t id = static_cast<std::size_t>(offsets[mask[i]] + spmap.cluster[i]);
    const std::uint8_t* px = img.data.data() + 3 * i;
    for (int ch = 0; ch < 3; ++ch) sums[3 * id + ch] += px[ch];
    ++counts[id];
  }

  StyleCodes codes = empty_codes(labels, n, k);
  for (int l = 0; l < labels; ++l) {
    const int clusters = spmap.cluster_count(l);
    if (clusters == 0) continue;
    LabelCode& out = codes.labels[l];
    out.present = true;
    out.raw.resize(static_cast<std::size_t>(clusters) * 3);
    for (int c = 0; c < clusters; ++c) {
      const std::size_t id = static_cast<std::size_t>(offsets[l] + c);
      const double denom = static_cast<double>(counts[id]) * 255.0;
      for (int ch = 0; ch < 3; ++ch) out.raw[3 * c + ch] = static_cast<double>(sums[3 * id + ch]) / denom;
    }
    out.code = resample_code(out.raw, n);
  }
  return codes;
}

StyleCodes encode_style(const RgbImage& img, const SemanticMask& mask, const SlicOptions& options, int n,
                        SuperpixelMap* spmap_out) {
  if (img.width != mask.width() || img.height != mask.height())
    throw DimensionMismatch("image is " + std::to_string(img.width) + "x" + std::to_string(img.height) +
                            " but mask is " + std::to_string(mask.width()) + "x" + std::to_string(mask.height()));
  const LabXyImage labxy = rgb_to_labxy(img, 1.0);
  SuperpixelMap spmap = cluster(labxy, mask, options);
  StyleCodes codes = extract_style_codes(img, mask, spmap, n, options.k);
  if (spmap_out) *spmap_out = std::move(spmap);
  return codes;
}

}  // namespace superstyle

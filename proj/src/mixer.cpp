#include "superstyle/mixer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "superstyle/errors.hpp"

namespace superstyle {
namespace {

void require_compatible(const StyleCodes& a, const StyleCodes& b) {
  if (a.n != b.n || a.label_count() != b.label_count())
    throw DimensionMismatch("code sets disagree: n=" + std::to_string(a.n) + ", L=" + std::to_string(a.label_count()) +
                            " vs n=" + std::to_string(b.n) + ", L=" + std::to_string(b.label_count()));
}

void take_label(StyleCodes& out, const StyleCodes& donor, int label, const std::string& donor_name) {
  if (label < 0 || label >= donor.label_count())
    throw DimensionMismatch("label " + std::to_string(label) + " outside [0, " +
                            std::to_string(donor.label_count()) + ")");
  const LabelCode& from = donor.labels[label];
  if (!from.present) throw LabelAbsentInDonor("label " + std::to_string(label) + " is absent in " + donor_name);
  out.labels[label] = from;
}

void validate_recipe(const MixRecipe& recipe, const std::vector<StyleCodes>& donors) {
  if (donors.empty()) throw std::invalid_argument("mixing needs at least one donor");
  for (std::size_t i = 1; i < donors.size(); ++i) require_compatible(donors[0], donors[i]);
  std::set<int> seen;
  for (const auto& a : recipe.assignments) {
    if (a.donor < 0 || a.donor >= static_cast<int>(donors.size()))
      throw std::invalid_argument("recipe names donor " + std::to_string(a.donor) + " but only " +
                                  std::to_string(donors.size()) + " were given");
    if (!seen.insert(a.label).second)
      throw std::invalid_argument("label " + std::to_string(a.label) + " is assigned more than one donor");
  }
}

std::uint8_t to_byte(double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); }

}  // namespace

StyleCodes swap_codes(const StyleCodes& source, const StyleCodes& style, const std::set<int>& labels) {
  require_compatible(source, style);
  StyleCodes out = source;
  for (int label : labels) take_label(out, style, label, "the style donor");
  return out;
}

StyleCodes mix_onto(const StyleCodes& base, const MixRecipe& recipe, const std::vector<StyleCodes>& donors) {
  validate_recipe(recipe, donors);
  require_compatible(base, donors[0]);
  StyleCodes out = base;
  for (const auto& a : recipe.assignments) take_label(out, donors[a.donor], a.label, "donor " + std::to_string(a.donor));
  return out;
}

StyleCodes mix_codes(const MixRecipe& recipe, const std::vector<StyleCodes>& donors) {
  validate_recipe(recipe, donors);
  return mix_onto(empty_codes(donors[0].label_count(), donors[0].n, donors[0].k), recipe, donors);
}

RgbImage coarse_reconstruct(const StyleCodes& codes, const SuperpixelMap& spmap, const SemanticMask& mask) {
  check_consistent(spmap, mask);
  if (codes.label_count() != mask.label_count())
    throw CodeLengthMismatch("codes carry " + std::to_string(codes.label_count()) + " labels, mask has " +
                             std::to_string(mask.label_count()));
  for (int l = 0; l < mask.label_count(); ++l) {
    const LabelCode& code = codes.labels[l];
    const int clusters = spmap.cluster_count(l);
    if (!code.present || clusters == 0) continue;
    if (code.raw.size() != static_cast<std::size_t>(clusters) * 3)
      throw CodeLengthMismatch("label " + std::to_string(l) + " has " + std::to_string(code.raw.size()) +
                               " raw values but " + std::to_string(clusters) + " superpixels");
  }

  RgbImage out(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.pixel_count(); ++i) {
    const LabelCode& code = codes.labels[mask[i]];
    if (!code.present) continue;
    const std::size_t base = 3 * static_cast<std::size_t>(spmap.cluster[i]);
    for (int ch = 0; ch < 3; ++ch) out.data[3 * i + ch] = to_byte(code.raw[base + ch]);
  }
  return out;
}

}  // namespace superstyle

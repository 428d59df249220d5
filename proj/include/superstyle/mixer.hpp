#pragma once

#include <set>
#include <vector>

#include "superstyle/image.hpp"
#include "superstyle/mask_slic.hpp"
#include "superstyle/spse.hpp"

namespace superstyle {

struct MixAssignment {
  int label = 0;
  int donor = 0;  // index into the donor list

  bool operator==(const MixAssignment&) const = default;
};

struct MixRecipe {
  std::vector<MixAssignment> assignments;
};

// Copy of source whose listed labels (code, raw code and presence) come from style.
StyleCodes swap_codes(const StyleCodes& source, const StyleCodes& style, const std::set<int>& labels);

// Labels picked from their assigned donors; labels outside the recipe stay absent.
StyleCodes mix_codes(const MixRecipe& recipe, const std::vector<StyleCodes>& donors);

// Same selection applied on top of base instead of an all-absent code set.
StyleCodes mix_onto(const StyleCodes& base, const MixRecipe& recipe, const std::vector<StyleCodes>& donors);

// Paints every superpixel with its stored mean color. Labels without codes are black.
RgbImage coarse_reconstruct(const StyleCodes& codes, const SuperpixelMap& spmap, const SemanticMask& mask);

}  // namespace superstyle

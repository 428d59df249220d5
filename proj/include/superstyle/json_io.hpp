#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "superstyle/gsas.hpp"
#include "superstyle/mask_slic.hpp"
#include "superstyle/mixer.hpp"
#include "superstyle/spse.hpp"

namespace superstyle {

// Style-code documents:
//   {"version":1, "n":int, "k":int, "scale":"unit",
//    "labels":[{"id":int, "present":bool, "raw":[...], "code":[...]}]}
// Keys are written in this order. Parsing throws SchemaError.
std::string codes_to_json(const StyleCodes& codes);
StyleCodes codes_from_json(const std::string& text);
void save_codes(const std::filesystem::path& path, const StyleCodes& codes);
StyleCodes load_codes(const std::filesystem::path& path);

// {"w1":float, "w2":float, "bias":float, "leaky_slope":float}
std::string params_to_json(const GsasParams& params);
GsasParams params_from_json(const std::string& text);
void save_params(const std::filesystem::path& path, const GsasParams& params);
GsasParams load_params(const std::filesystem::path& path);

// {"assignments":[{"label":int, "donor":"path-or-tag"}]}
struct RecipeFile {
  struct Entry {
    int label = 0;
    std::string donor;
  };
  std::vector<Entry> assignments;
};
RecipeFile recipe_from_json(const std::string& text);
RecipeFile load_recipe(const std::filesystem::path& path);

// Sidecar describing superpixel centers next to a 16-bit id map.
std::string centers_to_json(const SuperpixelMap& spmap);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace superstyle

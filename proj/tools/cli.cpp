#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "superstyle/color.hpp"
#include "superstyle/errors.hpp"
#include "superstyle/gsas.hpp"
#include "superstyle/json_io.hpp"
#include "superstyle/mask_slic.hpp"
#include "superstyle/mixer.hpp"
#include "superstyle/png_io.hpp"
#include "superstyle/spse.hpp"

namespace superstyle::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string image;
  std::string mask;
  std::string codes;
  std::string source;
  std::string style;
  std::string recipe;
  std::string params;
  std::string params_out;
  std::string map;
  std::string out;
  std::string map_out;
  std::string labels;
  int k = kDefaultSuperpixels;
  int n = kDefaultCodeLength;
  int iterations = kDefaultIterations;
  double compactness = kDefaultCompactness;
  int label_count = 0;
  std::uint64_t seed = 0;
  bool drop_averaging = false;
  bool windowed_search = false;

  SlicOptions slic() const {
    SlicOptions o;
    o.k = k;
    o.iterations = iterations;
    o.compactness = compactness;
    o.windowed_search = windowed_search;
    return o;
  }
};

struct Inputs {
  RgbImage image;
  SemanticMask mask;
};

SemanticMask load_mask(const RunConfig& cfg) {
  try {
    return read_mask_png(cfg.mask, cfg.label_count);
  } catch (const DimensionMismatch& e) {
    throw DimensionMismatch(std::string("mask: ") + e.what());
  }
}

Inputs load_inputs(const RunConfig& cfg) {
  Inputs in{read_rgb_png(cfg.image), load_mask(cfg)};
  if (in.image.width != in.mask.width() || in.image.height != in.mask.height())
    throw DimensionMismatch("mask " + cfg.mask + " is " + std::to_string(in.mask.width()) + "x" +
                            std::to_string(in.mask.height()) + " but image " + cfg.image + " is " +
                            std::to_string(in.image.width) + "x" + std::to_string(in.image.height));
  return in;
}

fs::path sidecar_path(const fs::path& map_png) {
  fs::path p = map_png;
  p.replace_extension(".centers.json");
  return p;
}

void write_map(const fs::path& path, const SuperpixelMap& spmap, const SemanticMask& mask) {
  write_gray16_png(path, Gray16Image{spmap.width, spmap.height, spmap.global_ids(mask)});
  write_text(sidecar_path(path), centers_to_json(spmap));
}

// Pixels whose 4-neighbourhood crosses a superpixel or label boundary are painted red.
RgbImage boundary_overlay(const RgbImage& image, const std::vector<std::uint16_t>& ids) {
  RgbImage out = image;
  const int w = image.width, h = image.height;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::uint16_t id = ids[static_cast<std::size_t>(y) * w + x];
      const bool edge = (x > 0 && ids[static_cast<std::size_t>(y) * w + x - 1] != id) ||
                        (x + 1 < w && ids[static_cast<std::size_t>(y) * w + x + 1] != id) ||
                        (y > 0 && ids[static_cast<std::size_t>(y - 1) * w + x] != id) ||
                        (y + 1 < h && ids[static_cast<std::size_t>(y + 1) * w + x] != id);
      if (!edge) continue;
      std::uint8_t* px = out.at(x, y);
      px[0] = 255;
      px[1] = 0;
      px[2] = 0;
    }
  }
  return out;
}

std::set<int> parse_label_list(const std::string& text) {
  std::set<int> labels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || value < 0) throw std::invalid_argument("bad label in --labels: " + item);
    labels.insert(value);
  }
  return labels;
}

int cmd_encode(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg);
  SuperpixelMap spmap;
  const StyleCodes codes = encode_style(in.image, in.mask, cfg.slic(), cfg.n, &spmap);
  save_codes(cfg.out, codes);
  if (!cfg.map_out.empty()) write_map(cfg.map_out, spmap, in.mask);
  int present = 0;
  for (const auto& l : codes.labels) present += l.present ? 1 : 0;
  out << "encoded " << present << " of " << codes.label_count() << " labels into " << cfg.out << "\n";
  return kOk;
}

int cmd_superpixels(const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty() && cfg.map_out.empty()) throw std::invalid_argument("superpixels needs --out and/or --map-out");
  const Inputs in = load_inputs(cfg);
  const SuperpixelMap spmap = cluster(rgb_to_labxy(in.image, 1.0), in.mask, cfg.slic());
  const auto ids = spmap.global_ids(in.mask);
  if (!cfg.out.empty()) write_rgb_png(cfg.out, boundary_overlay(in.image, ids));
  if (!cfg.map_out.empty()) write_map(cfg.map_out, spmap, in.mask);
  out << spmap.total_clusters() << " superpixels\n";
  return kOk;
}

int cmd_gsas(const RunConfig& cfg, std::ostream& out) {
  const StyleCodes codes = load_codes(cfg.codes);
  const GsasParams params = cfg.params.empty() ? random_params(cfg.seed) : load_params(cfg.params);
  if (!cfg.params_out.empty()) save_params(cfg.params_out, params);
  GsasOptions options;
  options.average = !cfg.drop_averaging;
  save_codes(cfg.out, gsas_refine_codes(codes, params, options));
  out << "refined codes written to " << cfg.out << "\n";
  return kOk;
}

int cmd_mix(const RunConfig& cfg, std::ostream& out) {
  StyleCodes result = load_codes(cfg.source);
  std::optional<StyleCodes> style;
  if (!cfg.style.empty()) style = load_codes(cfg.style);

  if (!cfg.labels.empty()) {
    if (!style) throw std::invalid_argument("--labels needs --style");
    result = swap_codes(result, *style, parse_label_list(cfg.labels));
  }
  if (!cfg.recipe.empty()) {
    const RecipeFile file = load_recipe(cfg.recipe);
    const fs::path base = fs::path(cfg.recipe).parent_path();
    std::vector<StyleCodes> donors;
    std::vector<std::string> donor_names;
    MixRecipe recipe;
    for (const auto& entry : file.assignments) {
      auto found = std::find(donor_names.begin(), donor_names.end(), entry.donor);
      int index = static_cast<int>(found - donor_names.begin());
      if (found == donor_names.end()) {
        if (entry.donor == "source") {
          donors.push_back(load_codes(cfg.source));
        } else if (entry.donor == "style") {
          if (!style) throw std::invalid_argument("recipe refers to \"style\" but --style was not given");
          donors.push_back(*style);
        } else {
          const fs::path p = fs::path(entry.donor).is_absolute() ? fs::path(entry.donor) : base / entry.donor;
          donors.push_back(load_codes(p));
        }
        donor_names.push_back(entry.donor);
      }
      recipe.assignments.push_back({entry.label, index});
    }
    if (!donors.empty()) result = mix_onto(result, recipe, donors);
  }
  save_codes(cfg.out, result);
  out << "mixed codes written to " << cfg.out << "\n";
  return kOk;
}

int cmd_reconstruct(const RunConfig& cfg, std::ostream& out) {
  const StyleCodes codes = load_codes(cfg.codes);
  const SemanticMask mask = load_mask(cfg);
  SuperpixelMap spmap;
  if (!cfg.map.empty()) {
    const Gray16Image ids = read_gray16_png(cfg.map);
    if (ids.width != mask.width() || ids.height != mask.height())
      throw DimensionMismatch("superpixel map " + cfg.map + " does not match mask " + cfg.mask);
    spmap = superpixel_map_from_ids(ids.data, mask);
  } else if (!cfg.image.empty()) {
    const Inputs in = load_inputs(cfg);
    spmap = cluster(rgb_to_labxy(in.image, 1.0), in.mask, cfg.slic());
  } else {
    throw std::invalid_argument("reconstruct needs --map or --image");
  }
  write_rgb_png(cfg.out, coarse_reconstruct(codes, spmap, mask));
  out << "reconstruction written to " << cfg.out << "\n";
  return kOk;
}

void add_clustering_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--k", cfg.k, "Superpixels per label")->check(CLI::Range(1, 65535));
  sub->add_option("--iters", cfg.iterations, "Clustering iterations")->check(CLI::Range(1, 100000));
  sub->add_option("--compactness", cfg.compactness, "Spatial weight m (0 disables rescaling)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--label-count", cfg.label_count, "Number of labels L (default: max mask value + 1)")
      ->check(CLI::Range(1, 256));
  sub->add_flag("--windowed-search", cfg.windowed_search, "Only consider centers within one grid interval");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Superpixel style codes: encode, refine, mix and reconstruct"};
  app.require_subcommand(1);

  auto* encode = app.add_subcommand("encode", "Encode an image and label mask into style codes");
  encode->add_option("--image", cfg.image, "RGB PNG")->required();
  encode->add_option("--mask", cfg.mask, "8-bit label PNG")->required();
  encode->add_option("--out", cfg.out, "Style-code JSON")->required();
  encode->add_option("--map-out", cfg.map_out, "16-bit superpixel id PNG");
  encode->add_option("--n", cfg.n, "Code length")->check(CLI::Range(3, 1 << 20));
  add_clustering_flags(encode, cfg);

  auto* superpixels = app.add_subcommand("superpixels", "Write a boundary overlay and superpixel id map");
  superpixels->add_option("--image", cfg.image, "RGB PNG")->required();
  superpixels->add_option("--mask", cfg.mask, "8-bit label PNG")->required();
  superpixels->add_option("--out", cfg.out, "Overlay PNG");
  superpixels->add_option("--map-out", cfg.map_out, "16-bit superpixel id PNG");
  add_clustering_flags(superpixels, cfg);

  auto* gsas = app.add_subcommand("gsas", "Refine style codes with graphical self-attention");
  gsas->add_option("--codes", cfg.codes, "Style-code JSON")->required();
  gsas->add_option("--out", cfg.out, "Refined style-code JSON")->required();
  gsas->add_option("--params", cfg.params, "Parameter JSON (default: seeded random draw)");
  gsas->add_option("--params-out", cfg.params_out, "Write the parameters used");
  gsas->add_option("--seed", cfg.seed, "Seed for random parameters");
  gsas->add_flag("--drop-averaging", cfg.drop_averaging, "Skip the 1/N scaling of the aggregated vector");

  auto* mix = app.add_subcommand("mix", "Swap or mix style codes across images");
  mix->add_option("--source", cfg.source, "Base style-code JSON")->required();
  mix->add_option("--style", cfg.style, "Donor style-code JSON");
  mix->add_option("--labels", cfg.labels, "Comma-separated labels to take from --style");
  mix->add_option("--recipe", cfg.recipe, "Recipe JSON");
  mix->add_option("--out", cfg.out, "Mixed style-code JSON")->required();

  auto* reconstruct = app.add_subcommand("reconstruct", "Paint superpixels with their stored colors");
  reconstruct->add_option("--codes", cfg.codes, "Style-code JSON")->required();
  reconstruct->add_option("--mask", cfg.mask, "8-bit label PNG")->required();
  reconstruct->add_option("--map", cfg.map, "16-bit superpixel id PNG from encode/superpixels");
  reconstruct->add_option("--image", cfg.image, "Re-cluster this image instead of reading --map");
  reconstruct->add_option("--out", cfg.out, "Output PNG")->required();
  add_clustering_flags(reconstruct, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (encode->parsed()) return cmd_encode(cfg, out);
    if (superpixels->parsed()) return cmd_superpixels(cfg, out);
    if (gsas->parsed()) return cmd_gsas(cfg, out);
    if (mix->parsed()) return cmd_mix(cfg, out);
    if (reconstruct->parsed()) return cmd_reconstruct(cfg, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kSchema;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kInconsistent;
  } catch (const LabelAbsentInDonor& e) {
    err << "error: " << e.what() << "\n";
    return kInconsistent;
  } catch (const EmptyLabel& e) {
    err << "error: " << e.what() << "\n";
    return kInconsistent;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace superstyle::cli

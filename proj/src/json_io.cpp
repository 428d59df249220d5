#include "superstyle/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "superstyle/errors.hpp"

namespace superstyle {
namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) throw SchemaError("expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

double number_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number()) throw SchemaError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

std::vector<double> number_array(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_array()) throw SchemaError(std::string("field \"") + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw SchemaError(std::string("field \"") + key + "\" must hold numbers only");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

std::string codes_to_json(const StyleCodes& codes) {
  ordered_json doc;
  doc["version"] = 1;
  doc["n"] = codes.n;
  doc["k"] = codes.k;
  doc["scale"] = "unit";
  ordered_json labels = ordered_json::array();
  for (const auto& l : codes.labels) {
    ordered_json entry;
    entry["id"] = l.id;
    entry["present"] = l.present;
    entry["raw"] = l.raw;
    entry["code"] = l.code;
    labels.push_back(std::move(entry));
  }
  doc["labels"] = std::move(labels);
  return doc.dump() + "\n";
}

StyleCodes codes_from_json(const std::string& text) {
  const json doc = parse(text);
  if (int_field(doc, "version") != 1) throw SchemaError("unsupported style-code version");
  const json& scale = field(doc, "scale");
  if (!scale.is_string() || scale.get<std::string>() != "unit") throw SchemaError("field \"scale\" must be \"unit\"");
  StyleCodes codes;
  codes.n = int_field(doc, "n");
  codes.k = int_field(doc, "k");
  if (codes.n < 1 || codes.k < 1) throw SchemaError("\"n\" and \"k\" must be positive");
  const json& labels = field(doc, "labels");
  if (!labels.is_array()) throw SchemaError("field \"labels\" must be an array");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    LabelCode l;
    l.id = int_field(labels[i], "id");
    if (l.id != static_cast<int>(i)) throw SchemaError("label ids must be 0..L-1 in order");
    const json& present = field(labels[i], "present");
    if (!present.is_boolean()) throw SchemaError("field \"present\" must be a boolean");
    l.present = present.get<bool>();
    l.raw = number_array(labels[i], "raw");
    l.code = number_array(labels[i], "code");
    if (l.code.size() != static_cast<std::size_t>(codes.n))
      throw SchemaError("label " + std::to_string(i) + " code has " + std::to_string(l.code.size()) +
                        " entries, expected " + std::to_string(codes.n));
    if (l.raw.size() % 3 != 0) throw SchemaError("label " + std::to_string(i) + " raw length is not a multiple of 3");
    if (l.present && l.raw.empty()) throw SchemaError("present label " + std::to_string(i) + " has no raw code");
    codes.labels.push_back(std::move(l));
  }
  return codes;
}

void save_codes(const std::filesystem::path& path, const StyleCodes& codes) { write_text(path, codes_to_json(codes)); }

StyleCodes load_codes(const std::filesystem::path& path) {
  try {
    return codes_from_json(read_text(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

std::string params_to_json(const GsasParams& params) {
  ordered_json doc;
  doc["w1"] = params.w1;
  doc["w2"] = params.w2;
  doc["bias"] = params.bias;
  doc["leaky_slope"] = params.leaky_slope;
  return doc.dump() + "\n";
}

GsasParams params_from_json(const std::string& text) {
  const json doc = parse(text);
  GsasParams p;
  p.w1 = number_field(doc, "w1");
  p.w2 = number_field(doc, "w2");
  p.bias = number_field(doc, "bias");
  if (doc.contains("leaky_slope")) p.leaky_slope = number_field(doc, "leaky_slope");
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  return p;
}

void save_params(const std::filesystem::path& path, const GsasParams& params) {
  write_text(path, params_to_json(params));
}

GsasParams load_params(const std::filesystem::path& path) {
  try {
    return params_from_json(read_text(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

RecipeFile recipe_from_json(const std::string& text) {
  const json doc = parse(text);
  const json& entries = field(doc, "assignments");
  if (!entries.is_array()) throw SchemaError("field \"assignments\" must be an array");
  RecipeFile recipe;
  std::set<int> seen;
  for (const auto& e : entries) {
    RecipeFile::Entry entry;
    entry.label = int_field(e, "label");
    const json& donor = field(e, "donor");
    if (!donor.is_string() || donor.get<std::string>().empty())
      throw SchemaError("field \"donor\" must be a non-empty string");
    entry.donor = donor.get<std::string>();
    if (entry.label < 0) throw SchemaError("negative label in recipe");
    if (!seen.insert(entry.label).second)
      throw SchemaError("label " + std::to_string(entry.label) + " is assigned more than one donor");
    recipe.assignments.push_back(std::move(entry));
  }
  return recipe;
}

RecipeFile load_recipe(const std::filesystem::path& path) {
  try {
    return recipe_from_json(read_text(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

std::string centers_to_json(const SuperpixelMap& spmap) {
  ordered_json doc;
  doc["width"] = spmap.width;
  doc["height"] = spmap.height;
  const auto offsets = spmap.label_offsets();
  ordered_json labels = ordered_json::array();
  for (std::size_t l = 0; l < spmap.labels.size(); ++l) {
    const auto& lc = spmap.labels[l];
    ordered_json entry;
    entry["id"] = lc.label;
    entry["offset"] = offsets[l];
    entry["clusters"] = lc.cluster_count();
    ordered_json centers = ordered_json::array();
    for (const auto& c : lc.centers) centers.push_back(std::vector<double>(c.begin(), c.end()));
    entry["centers"] = std::move(centers);
    labels.push_back(std::move(entry));
  }
  doc["labels"] = std::move(labels);
  return doc.dump() + "\n";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed to read " + path.string());
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed to write " + path.string());
}

}  // namespace superstyle

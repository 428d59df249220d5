#include <random>

#include "doctest.h"
#include "superstyle/color.hpp"
#include "superstyle/errors.hpp"
#include "superstyle/mixer.hpp"
#include "synthetic.hpp"

using namespace superstyle;

namespace {

StyleCodes random_codes(int labels, int n, std::mt19937_64& rng, std::set<int> absent = {}) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StyleCodes codes = empty_codes(labels, n, 2);
  for (int l = 0; l < labels; ++l) {
    if (absent.count(l)) continue;
    codes.labels[l].present = true;
    codes.labels[l].raw.resize(6);
    for (auto& v : codes.labels[l].raw) v = unit(rng);
    codes.labels[l].code = resample_code(codes.labels[l].raw, n);
  }
  return codes;
}

// Labels whose entries differ between two code sets.
std::set<int> differing(const StyleCodes& a, const StyleCodes& b) {
  std::set<int> out;
  for (int l = 0; l < a.label_count(); ++l)
    if (!(a.labels[l] == b.labels[l])) out.insert(l);
  return out;
}

}  // namespace

TEST_CASE("swap_codes") {
  std::mt19937_64 rng(51);
  const StyleCodes source = random_codes(5, 8, rng, {4});
  const StyleCodes style = random_codes(5, 8, rng, {1});

  CHECK(swap_codes(source, style, {}) == source);
  CHECK(differing(swap_codes(source, style, {3}), source) == std::set<int>{3});
  const StyleCodes all = swap_codes(source, style, {0, 2, 3, 4});
  for (int l : {0, 2, 3, 4}) CHECK(all.labels[l] == style.labels[l]);
  CHECK(all.labels[1] == source.labels[1]);

  const StyleCodes once = swap_codes(source, style, {0, 3});
  CHECK(swap_codes(once, style, {0, 3}) == once);

  CHECK_THROWS_AS(swap_codes(source, style, {1}), LabelAbsentInDonor);
  CHECK_THROWS_AS(swap_codes(source, random_codes(5, 9, rng), {0}), DimensionMismatch);
  CHECK_THROWS_AS(swap_codes(source, random_codes(4, 8, rng), {0}), DimensionMismatch);
}

TEST_CASE("mix_codes") {
  std::mt19937_64 rng(52);
  const std::vector<StyleCodes> donors = {random_codes(6, 8, rng), random_codes(6, 8, rng), random_codes(6, 8, rng)};

  const StyleCodes single = mix_codes(MixRecipe{{{1, 0}, {4, 0}}}, {donors[0]});
  CHECK(differing(single, empty_codes(6, 8, 2)) == std::set<int>{1, 4});
  CHECK(single.labels[1] == donors[0].labels[1]);

  const StyleCodes both = mix_codes(MixRecipe{{{0, 0}, {1, 0}, {2, 1}, {3, 1}}}, {donors[0], donors[1]});
  for (int l = 0; l < 2; ++l) CHECK(both.labels[l] == donors[0].labels[l]);
  for (int l = 2; l < 4; ++l) CHECK(both.labels[l] == donors[1].labels[l]);

  const MixRecipe three{{{0, 2}, {1, 0}, {2, 1}, {3, 2}, {4, 0}, {5, 1}}};
  const StyleCodes mixed = mix_codes(three, donors);
  for (const auto& a : three.assignments) CHECK(mixed.labels[a.label] == donors[a.donor].labels[a.label]);
  CHECK(mix_codes(three, donors) == mixed);

  CHECK(mix_onto(donors[2], MixRecipe{}, donors) == donors[2]);
  CHECK_THROWS_AS(mix_codes(MixRecipe{{{0, 3}}}, donors), std::invalid_argument);
  CHECK_THROWS_AS(mix_codes(MixRecipe{{{0, 0}, {0, 1}}}, donors), std::invalid_argument);
  CHECK_THROWS_AS(mix_codes(MixRecipe{{{9, 0}}}, donors), DimensionMismatch);
}

TEST_CASE("coarse_reconstruct paints stored means") {
  const RgbImage flat = synthetic::constant_image(10, 8, 90, 10, 250);
  std::mt19937_64 rng(53);
  const SemanticMask mask = synthetic::random_mask(10, 8, 3, rng);
  SuperpixelMap map;
  const StyleCodes codes = encode_style(flat, mask, {.k = 4}, 12, &map);
  CHECK(coarse_reconstruct(codes, map, mask) == flat);

  const RgbImage img = synthetic::random_image(10, 8, rng);
  const StyleCodes img_codes = encode_style(img, mask, {.k = 5}, 12, &map);
  const RgbImage rec = coarse_reconstruct(img_codes, map, mask);
  const auto offsets = map.label_offsets();
  std::vector<std::array<double, 4>> sums(map.total_clusters(), {0, 0, 0, 0});
  for (std::size_t i = 0; i < mask.pixel_count(); ++i) {
    auto& s = sums[offsets[mask[i]] + map.cluster[i]];
    for (int c = 0; c < 3; ++c) s[c] += rec.data[3 * i + c];
    s[3] += 1;
  }
  for (int l = 0; l < mask.label_count(); ++l)
    for (int c = 0; c < map.cluster_count(l); ++c)
      for (int ch = 0; ch < 3; ++ch) {
        const double mean = sums[offsets[l] + c][ch] / sums[offsets[l] + c][3];
        CHECK(std::abs(mean - 255.0 * img_codes.labels[l].raw[3 * c + ch]) <= 1.0);
      }

  StyleCodes missing = img_codes;
  for (auto& l : missing.labels) l.present = l.present && l.id != mask[0];
  const RgbImage dark = coarse_reconstruct(missing, map, mask);
  CHECK(dark.data[0] == 0);
  CHECK(dark.data[1] == 0);
  CHECK(dark.data[2] == 0);

  StyleCodes short_raw = img_codes;
  short_raw.labels[mask[0]].raw.resize(3 * (map.cluster_count(mask[0]) + 1));
  CHECK_THROWS_AS(coarse_reconstruct(short_raw, map, mask), CodeLengthMismatch);
}

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "superstyle/image.hpp"

namespace superstyle {

// One point in [l, a, b, x, y] clustering space.
using Feature = std::array<double, 5>;

inline constexpr int kDefaultSuperpixels = 128;
inline constexpr int kDefaultIterations = 10;
inline constexpr double kDefaultCompactness = 10.0;

struct SlicOptions {
  int k = kDefaultSuperpixels;
  int iterations = kDefaultIterations;
  // Spatial coordinates are multiplied by compactness / S with
  // S = sqrt(label_pixels / k). Zero or negative leaves them untouched.
  double compactness = kDefaultCompactness;
  // Restrict candidates to centers within S of the pixel (SLIC's 2S x 2S
  // window). Results can differ from the full scan.
  bool windowed_search = false;
};

// Expected superpixel spacing, in pixels, for a label of pixel_count pixels split k ways.
double grid_interval(std::size_t pixel_count, int k);

// Factor applied to x and y before distances are taken.
double spatial_scale(std::size_t pixel_count, int k, double compactness);

// The pixels of one label, lifted into clustering space.
struct LabelPixels {
  int label = 0;
  int image_width = 0;
  double scale = 1.0;
  double interval = 1.0;
  std::vector<std::size_t> indices;  // flat pixel indices, ascending
  std::vector<Feature> features;     // x, y already multiplied by scale

  std::size_t size() const { return indices.size(); }
  int col(std::size_t i) const { return static_cast<int>(indices[i] % image_width); }
  int row(std::size_t i) const { return static_cast<int>(indices[i] / image_width); }
};

// Throws EmptyLabel when the label has no pixels.
LabelPixels gather_label(const LabXyImage& labxy, const SemanticMask& mask, int label, int k, double compactness);

double squared_distance(const Feature& a, const Feature& b);

// Grid seeding over the label's bounding box; returns min(k, pixel count)
// centers in clustering space.
std::vector<Feature> init_centers(const LabelPixels& pixels, int k);

// Same seeding, with the label gathered at unit scale so the centers are in
// the coordinates of labxy.
std::vector<Feature> init_centers(const LabXyImage& labxy, const SemanticMask& mask, int label, int k);

// Nearest center for every label pixel, lowest index on ties.
std::vector<int> assign_pixels(const LabelPixels& pixels, std::span<const Feature> centers,
                               bool windowed_search = false);

// Nearest center using the features of labxy as-is. Result is ordered like mask.pixels_of(label).
std::vector<int> assign_pixels(const LabXyImage& labxy, const SemanticMask& mask, int label,
                               std::span<const Feature> centers);

// Cluster means. A cluster left empty is re-seeded on the pixel that is
// farthest from its own (updated) center; several empty clusters take
// successive pixels in that order.
std::vector<Feature> update_centers(const LabelPixels& pixels, std::span<const int> assignment, int k);

// Sum over pixels of the squared distance to the assigned center.
double clustering_objective(const LabelPixels& pixels, std::span<const int> assignment,
                            std::span<const Feature> centers);

struct LabelClusters {
  int label = 0;
  bool present = false;
  double scale = 1.0;
  int clusters = 0;
  // Final centers in the coordinates of the input LabXyImage.
  std::vector<Feature> centers;
  // Objective after every assign/update round, plus one entry for the final assignment.
  std::vector<double> objective_history;

  int cluster_count() const { return clusters; }
};

struct SuperpixelMap {
  int width = 0;
  int height = 0;
  // Cluster index within the pixel's own label.
  std::vector<std::int32_t> cluster;
  std::vector<LabelClusters> labels;

  int cluster_count(int label) const { return labels.at(label).cluster_count(); }
  // First global id of every label, label-major.
  std::vector<int> label_offsets() const;
  int total_clusters() const;
  // label_offset + cluster index per pixel. Throws DimensionMismatch past 16 bits.
  std::vector<std::uint16_t> global_ids(const SemanticMask& mask) const;

  bool operator==(const SuperpixelMap&) const = default;
};

inline bool operator==(const LabelClusters& a, const LabelClusters& b) {
  return a.label == b.label && a.present == b.present && a.clusters == b.clusters && a.scale == b.scale && a.centers == b.centers &&
         a.objective_history == b.objective_history;
}

// Throws DimensionMismatch unless spmap describes a partition of every label of mask.
void check_consistent(const SuperpixelMap& spmap, const SemanticMask& mask);

// Runs the per-label clustering. Labels with no pixels are reported absent.
SuperpixelMap cluster(const LabXyImage& labxy, const SemanticMask& mask, const SlicOptions& options = {});

// Rebuilds a map from label-major global ids. Centers are left empty and the
// cluster count of a label is recovered from its id range.
SuperpixelMap superpixel_map_from_ids(std::span<const std::uint16_t> ids, const SemanticMask& mask);

}  // namespace superstyle

#include "superstyle/mask_slic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "superstyle/errors.hpp"

namespace superstyle {
namespace {

int clamp_k(std::size_t pixel_count, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return static_cast<int>(std::min<std::size_t>(pixel_count, static_cast<std::size_t>(k)));
}

// Indices of pixels sorted by decreasing squared distance to their own center, index ascending on ties.
std::vector<std::size_t> worst_served_order(const LabelPixels& pixels, std::span<const int> assignment,
                                            std::span<const Feature> centers) {
  std::vector<double> d2(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i)
    d2[i] = squared_distance(pixels.features[i], centers[assignment[i]]);
  std::vector<std::size_t> order(pixels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d2[a] > d2[b]; });
  return order;
}

std::vector<Feature> means(const LabelPixels& pixels, std::span<const int> assignment, int k,
                           std::vector<std::size_t>& counts) {
  std::vector<Feature> sums(k, Feature{});
  counts.assign(k, 0);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const int c = assignment[i];
    for (int d = 0; d < 5; ++d) sums[c][d] += pixels.features[i][d];
    ++counts[c];
  }
  for (int c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    for (int d = 0; d < 5; ++d) sums[c][d] /= static_cast<double>(counts[c]);
  }
  return sums;
}

// Moves pixels into empty clusters until every cluster owns at least one.
// Donors are the worst-served pixels of clusters that keep a member.
void fill_empty_clusters(const LabelPixels& pixels, std::vector<int>& assignment, std::vector<Feature>& centers) {
  const int k = static_cast<int>(centers.size());
  std::vector<std::size_t> counts(k, 0);
  for (int c : assignment) ++counts[c];
  if (std::find(counts.begin(), counts.end(), 0) == counts.end()) return;

  const auto order = worst_served_order(pixels, assignment, centers);
  std::size_t next = 0;
  for (int c = 0; c < k; ++c) {
    if (counts[c] != 0) continue;
    while (counts[assignment[order[next]]] < 2) ++next;
    const std::size_t donor = order[next++];
    --counts[assignment[donor]];
    assignment[donor] = c;
    counts[c] = 1;
    centers[c] = pixels.features[donor];
  }
}

}  // namespace

double grid_interval(std::size_t pixel_count, int k) {
  const int kl = clamp_k(pixel_count, k);
  if (kl == 0) return 1.0;
  return std::sqrt(static_cast<double>(pixel_count) / kl);
}

double spatial_scale(std::size_t pixel_count, int k, double compactness) {
  if (compactness <= 0.0) return 1.0;
  return compactness / grid_interval(pixel_count, k);
}

double squared_distance(const Feature& a, const Feature& b) {
  double sum = 0.0;
  for (int d = 0; d < 5; ++d) {
    const double diff = a[d] - b[d];
    sum += diff * diff;
  }
  return sum;
}

LabelPixels gather_label(const LabXyImage& labxy, const SemanticMask& mask, int label, int k, double compactness) {
  if (labxy.width != mask.width() || labxy.height != mask.height())
    throw DimensionMismatch("image is " + std::to_string(labxy.width) + "x" + std::to_string(labxy.height) +
                            " but mask is " + std::to_string(mask.width()) + "x" + std::to_string(mask.height()));
  LabelPixels out;
  out.label = label;
  out.image_width = labxy.width;
  out.indices = mask.pixels_of(label);
  if (out.indices.empty()) throw EmptyLabel("label " + std::to_string(label) + " occupies no pixels");
  out.interval = grid_interval(out.size(), k);
  out.scale = spatial_scale(out.size(), k, compactness);
  out.features.resize(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double* px = labxy.pixel(out.indices[i]);
    out.features[i] = {px[0], px[1], px[2], px[3] * out.scale, px[4] * out.scale};
  }
  return out;
}

std::vector<Feature> init_centers(const LabelPixels& pixels, int k) {
  if (pixels.size() == 0) throw EmptyLabel("label " + std::to_string(pixels.label) + " occupies no pixels");
  const int kl = clamp_k(pixels.size(), k);
  const double step = grid_interval(pixels.size(), kl);

  int xmin = std::numeric_limits<int>::max(), ymin = xmin, xmax = 0, ymax = 0;
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    xmin = std::min(xmin, pixels.col(i));
    xmax = std::max(xmax, pixels.col(i));
    ymin = std::min(ymin, pixels.row(i));
    ymax = std::max(ymax, pixels.row(i));
  }
  const int gx = std::max(1, static_cast<int>(std::ceil((xmax - xmin + 1) / step)));
  const int gy = std::max(1, static_cast<int>(std::ceil((ymax - ymin + 1) / step)));

  // Cell (cx, cy) covers [xmin - 0.5 + cx * step, xmin - 0.5 + (cx + 1) * step) and likewise in y.
  struct Cell {
    Feature sum{};
    double col_sum = 0.0, row_sum = 0.0;
    std::size_t count = 0;
    double nearest = std::numeric_limits<double>::infinity();
  };
  std::vector<Cell> cells(static_cast<std::size_t>(gx) * gy);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const int col = pixels.col(i), row = pixels.row(i);
    const int cx = std::min(gx - 1, static_cast<int>(std::floor((col - xmin + 0.5) / step)));
    const int cy = std::min(gy - 1, static_cast<int>(std::floor((row - ymin + 0.5) / step)));
    Cell& cell = cells[static_cast<std::size_t>(cy) * gx + cx];
    for (int d = 0; d < 5; ++d) cell.sum[d] += pixels.features[i][d];
    cell.col_sum += col;
    cell.row_sum += row;
    ++cell.count;
    const double dx = col - (xmin - 0.5 + (cx + 0.5) * step);
    const double dy = row - (ymin - 0.5 + (cy + 0.5) * step);
    cell.nearest = std::min(cell.nearest, std::sqrt(dx * dx + dy * dy));
  }

  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (cells[c].count > 0 && cells[c].nearest <= step / 2.0) kept.push_back(c);
  if (kept.size() > static_cast<std::size_t>(kl)) {
    std::stable_sort(kept.begin(), kept.end(),
                     [&](std::size_t a, std::size_t b) { return cells[a].count > cells[b].count; });
    kept.resize(kl);
    std::sort(kept.begin(), kept.end());
  }

  std::vector<Feature> centers;
  std::vector<std::array<double, 2>> positions;
  for (std::size_t c : kept) {
    const Cell& cell = cells[c];
    Feature mean = cell.sum;
    for (double& v : mean) v /= static_cast<double>(cell.count);
    centers.push_back(mean);
    positions.push_back({cell.col_sum / cell.count, cell.row_sum / cell.count});
  }

  // Farthest-point sampling over the label's pixels fills any shortfall.
  if (centers.size() < static_cast<std::size_t>(kl)) {
    std::vector<double> d2(pixels.size(), std::numeric_limits<double>::infinity());
    auto absorb = [&](const std::array<double, 2>& p) {
      for (std::size_t i = 0; i < pixels.size(); ++i) {
        const double dx = pixels.col(i) - p[0], dy = pixels.row(i) - p[1];
        d2[i] = std::min(d2[i], dx * dx + dy * dy);
      }
    };
    if (positions.empty()) {
      // Start from the label's centroid so the first pick is its nearest pixel.
      double cx = 0.0, cy = 0.0;
      for (std::size_t i = 0; i < pixels.size(); ++i) {
        cx += pixels.col(i);
        cy += pixels.row(i);
      }
      cx /= pixels.size();
      cy /= pixels.size();
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < pixels.size(); ++i) {
        const double dx = pixels.col(i) - cx, dy = pixels.row(i) - cy;
        if (dx * dx + dy * dy < best_d) {
          best_d = dx * dx + dy * dy;
          best = i;
        }
      }
      centers.push_back(pixels.features[best]);
      positions.push_back({static_cast<double>(pixels.col(best)), static_cast<double>(pixels.row(best))});
    }
    for (const auto& p : positions) absorb(p);
    while (centers.size() < static_cast<std::size_t>(kl)) {
      const std::size_t pick =
          static_cast<std::size_t>(std::distance(d2.begin(), std::max_element(d2.begin(), d2.end())));
      centers.push_back(pixels.features[pick]);
      const std::array<double, 2> p = {static_cast<double>(pixels.col(pick)), static_cast<double>(pixels.row(pick))};
      absorb(p);
    }
  }
  return centers;
}

std::vector<Feature> init_centers(const LabXyImage& labxy, const SemanticMask& mask, int label, int k) {
  return init_centers(gather_label(labxy, mask, label, k, 0.0), k);
}

std::vector<int> assign_pixels(const LabelPixels& pixels, std::span<const Feature> centers, bool windowed_search) {
  if (centers.empty()) throw std::invalid_argument("assign_pixels needs at least one center");
  const double reach = pixels.interval * pixels.scale;
  std::vector<int> out(pixels.size(), 0);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const Feature& f = pixels.features[i];
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    if (windowed_search) {
      for (std::size_t c = 0; c < centers.size(); ++c) {
        if (std::abs(centers[c][3] - f[3]) > reach || std::abs(centers[c][4] - f[4]) > reach) continue;
        const double d = squared_distance(f, centers[c]);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(c);
        }
      }
    }
    if (best < 0) {
      for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = squared_distance(f, centers[c]);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(c);
        }
      }
    }
    out[i] = best < 0 ? 0 : best;
  }
  return out;
}

std::vector<int> assign_pixels(const LabXyImage& labxy, const SemanticMask& mask, int label,
                               std::span<const Feature> centers) {
  const LabelPixels pixels = gather_label(labxy, mask, label, static_cast<int>(centers.size()), 0.0);
  return assign_pixels(pixels, centers, false);
}

std::vector<Feature> update_centers(const LabelPixels& pixels, std::span<const int> assignment, int k) {
  if (assignment.size() != pixels.size())
    throw DimensionMismatch("assignment covers " + std::to_string(assignment.size()) + " pixels, label has " +
                            std::to_string(pixels.size()));
  for (int c : assignment)
    if (c < 0 || c >= k) throw std::invalid_argument("cluster index " + std::to_string(c) + " outside [0, k)");

  std::vector<std::size_t> counts;
  std::vector<Feature> centers = means(pixels, assignment, k, counts);
  if (std::find(counts.begin(), counts.end(), 0) == counts.end()) return centers;

  const auto order = worst_served_order(pixels, assignment, centers);
  std::size_t next = 0;
  for (int c = 0; c < k; ++c) {
    if (counts[c] != 0) continue;
    centers[c] = pixels.features[order[std::min(next++, order.size() - 1)]];
  }
  return centers;
}

double clustering_objective(const LabelPixels& pixels, std::span<const int> assignment,
                            std::span<const Feature> centers) {
  double total = 0.0;
  for (std::size_t i = 0; i < pixels.size(); ++i) total += squared_distance(pixels.features[i], centers[assignment[i]]);
  return total;
}

std::vector<int> SuperpixelMap::label_offsets() const {
  std::vector<int> offsets(labels.size(), 0);
  int running = 0;
  for (std::size_t l = 0; l < labels.size(); ++l) {
    offsets[l] = running;
    running += labels[l].cluster_count();
  }
  return offsets;
}

int SuperpixelMap::total_clusters() const {
  int total = 0;
  for (const auto& l : labels) total += l.cluster_count();
  return total;
}

std::vector<std::uint16_t> SuperpixelMap::global_ids(const SemanticMask& mask) const {
  check_consistent(*this, mask);
  if (total_clusters() > 65536)
    throw DimensionMismatch(std::to_string(total_clusters()) + " superpixels do not fit a 16-bit id map");
  const auto offsets = label_offsets();
  std::vector<std::uint16_t> ids(cluster.size());
  for (std::size_t i = 0; i < cluster.size(); ++i) ids[i] = static_cast<std::uint16_t>(offsets[mask[i]] + cluster[i]);
  return ids;
}

void check_consistent(const SuperpixelMap& spmap, const SemanticMask& mask) {
  if (spmap.width != mask.width() || spmap.height != mask.height() || spmap.cluster.size() != mask.pixel_count())
    throw DimensionMismatch("superpixel map is " + std::to_string(spmap.width) + "x" + std::to_string(spmap.height) +
                            " but mask is " + std::to_string(mask.width()) + "x" + std::to_string(mask.height()));
  if (spmap.labels.size() != static_cast<std::size_t>(mask.label_count()))
    throw DimensionMismatch("superpixel map has " + std::to_string(spmap.labels.size()) + " labels, mask has " +
                            std::to_string(mask.label_count()));
  std::vector<std::vector<char>> seen(spmap.labels.size());
  for (std::size_t l = 0; l < spmap.labels.size(); ++l) seen[l].assign(spmap.labels[l].cluster_count(), 0);
  for (std::size_t i = 0; i < spmap.cluster.size(); ++i) {
    const int label = mask[i];
    const int c = spmap.cluster[i];
    if (c < 0 || c >= spmap.labels[label].cluster_count())
      throw DimensionMismatch("pixel " + std::to_string(i) + " has cluster " + std::to_string(c) + " outside label " +
                              std::to_string(label) + "'s range");
    seen[label][c] = 1;
  }
  for (std::size_t l = 0; l < seen.size(); ++l)
    if (std::find(seen[l].begin(), seen[l].end(), 0) != seen[l].end())
      throw DimensionMismatch("label " + std::to_string(l) + " has a superpixel with no pixels");
}

SuperpixelMap cluster(const LabXyImage& labxy, const SemanticMask& mask, const SlicOptions& options) {
  if (options.k < 1) throw std::invalid_argument("k must be >= 1");
  if (options.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (labxy.width != mask.width() || labxy.height != mask.height())
    throw DimensionMismatch("image is " + std::to_string(labxy.width) + "x" + std::to_string(labxy.height) +
                            " but mask is " + std::to_string(mask.width()) + "x" + std::to_string(mask.height()));

  SuperpixelMap out;
  out.width = labxy.width;
  out.height = labxy.height;
  out.cluster.assign(labxy.pixel_count(), 0);
  out.labels.resize(mask.label_count());

  for (int label = 0; label < mask.label_count(); ++label) {
    LabelClusters& result = out.labels[label];
    result.label = label;
    if (mask.count(label) == 0) continue;

    const LabelPixels pixels = gather_label(labxy, mask, label, options.k, options.compactness);
    std::vector<Feature> centers = init_centers(pixels, options.k);
    const int kl = static_cast<int>(centers.size());
    std::vector<int> assignment;
    for (int t = 0; t < options.iterations; ++t) {
      assignment = assign_pixels(pixels, centers, options.windowed_search);
      centers = update_centers(pixels, assignment, kl);
      result.objective_history.push_back(clustering_objective(pixels, assignment, centers));
    }
    assignment = assign_pixels(pixels, centers, options.windowed_search);
    fill_empty_clusters(pixels, assignment, centers);
    centers = update_centers(pixels, assignment, kl);
    result.objective_history.push_back(clustering_objective(pixels, assignment, centers));

    for (auto& c : centers) {
      c[3] /= pixels.scale;
      c[4] /= pixels.scale;
    }
    result.present = true;
    result.scale = pixels.scale;
    result.clusters = kl;
    result.centers = std::move(centers);
    for (std::size_t i = 0; i < pixels.size(); ++i) out.cluster[pixels.indices[i]] = assignment[i];
  }
  return out;
}

SuperpixelMap superpixel_map_from_ids(std::span<const std::uint16_t> ids, const SemanticMask& mask) {
  if (ids.size() != mask.pixel_count())
    throw DimensionMismatch("id map holds " + std::to_string(ids.size()) + " pixels, mask has " +
                            std::to_string(mask.pixel_count()));
  const int labels = mask.label_count();
  std::vector<int> lo(labels, std::numeric_limits<int>::max()), hi(labels, -1);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    lo[mask[i]] = std::min<int>(lo[mask[i]], ids[i]);
    hi[mask[i]] = std::max<int>(hi[mask[i]], ids[i]);
  }
  SuperpixelMap out;
  out.width = mask.width();
  out.height = mask.height();
  out.cluster.resize(ids.size());
  out.labels.resize(labels);
  for (int l = 0; l < labels; ++l) {
    out.labels[l].label = l;
    out.labels[l].present = hi[l] >= 0;
    out.labels[l].clusters = hi[l] >= 0 ? hi[l] - lo[l] + 1 : 0;
  }
  // Label-major ids: ranges of consecutive present labels must not overlap.
  int previous_hi = -1;
  for (int l = 0; l < labels; ++l) {
    if (hi[l] < 0) continue;
    if (lo[l] <= previous_hi) throw DimensionMismatch("superpixel ids of label " + std::to_string(l) + " overlap the previous label");
    previous_hi = hi[l];
  }
  for (std::size_t i = 0; i < ids.size(); ++i) out.cluster[i] = ids[i] - lo[mask[i]];
  check_consistent(out, mask);
  return out;
}

}  // namespace superstyle

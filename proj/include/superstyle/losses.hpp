#pragma once

#include <span>
#include <vector>

namespace superstyle {

// Dense (channels, height, width) activation tensor.
struct FeatureMap {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<double> values;

  FeatureMap() = default;
  FeatureMap(int c, int h, int w, std::vector<double> v);

  std::size_t size() const { return values.size(); }
};

using FeatureStack = std::vector<FeatureMap>;

inline constexpr double kDefaultPerceptualWeight = 10.0;
inline constexpr double kDefaultFeatureMatchingWeight = 10.0;

// Mean over layers of the per-layer mean absolute difference.
double perceptual_loss(const FeatureStack& real, const FeatureStack& fake);

// One value per discriminator scale, same per-layer normalization as perceptual_loss.
std::vector<double> feature_matching_loss(const std::vector<FeatureStack>& real_per_scale,
                                          const std::vector<FeatureStack>& fake_per_scale);

// -mean(min(0, -1 + d_real)) - mean(min(0, -1 - d_fake)).
double hinge_d_loss(std::span<const double> d_real, std::span<const double> d_fake);

// -mean(d_fake).
double hinge_g_loss(std::span<const double> d_fake);

// alpha * percept + sum_k (beta * fm_k + adv_k).
double total_loss(double percept, std::span<const double> fm_per_scale, std::span<const double> adv_per_scale,
                  double alpha = kDefaultPerceptualWeight, double beta = kDefaultFeatureMatchingWeight);

}  // namespace superstyle

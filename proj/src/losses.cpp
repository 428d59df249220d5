#include "superstyle/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "superstyle/errors.hpp"

namespace superstyle {
namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values)
    if (!std::isfinite(v)) throw NonFinite(std::string(what) + " contains a non-finite value");
}

double layer_mean_abs(const FeatureMap& real, const FeatureMap& fake, std::size_t layer) {
  if (real.channels != fake.channels || real.height != fake.height || real.width != fake.width)
    throw ShapeMismatch("layer " + std::to_string(layer) + ": (" + std::to_string(real.channels) + "," +
                        std::to_string(real.height) + "," + std::to_string(real.width) + ") vs (" +
                        std::to_string(fake.channels) + "," + std::to_string(fake.height) + "," +
                        std::to_string(fake.width) + ")");
  if (real.size() == 0) throw EmptyInput("layer " + std::to_string(layer) + " is empty");
  require_finite(real.values, "real features");
  require_finite(fake.values, "fake features");
  double sum = 0.0;
  for (std::size_t i = 0; i < real.size(); ++i) sum += std::abs(real.values[i] - fake.values[i]);
  return sum / static_cast<double>(real.size());
}

double stack_loss(const FeatureStack& real, const FeatureStack& fake) {
  if (real.empty()) throw EmptyInput("feature stack has no layers");
  if (real.size() != fake.size())
    throw ShapeMismatch("feature stacks have " + std::to_string(real.size()) + " and " + std::to_string(fake.size()) +
                        " layers");
  double sum = 0.0;
  for (std::size_t i = 0; i < real.size(); ++i) sum += layer_mean_abs(real[i], fake[i], i);
  return sum / static_cast<double>(real.size());
}

void require_scores(std::span<const double> scores, const char* what) {
  if (scores.empty()) throw EmptyInput(std::string(what) + " is empty");
  require_finite(scores, what);
}

}  // namespace

FeatureMap::FeatureMap(int c, int h, int w, std::vector<double> v)
    : channels(c), height(h), width(w), values(std::move(v)) {
  if (c < 0 || h < 0 || w < 0) throw ShapeMismatch("negative feature map extent");
  if (values.size() != static_cast<std::size_t>(c) * h * w)
    throw ShapeMismatch("feature map holds " + std::to_string(values.size()) + " values, shape needs " +
                        std::to_string(static_cast<std::size_t>(c) * h * w));
}

double perceptual_loss(const FeatureStack& real, const FeatureStack& fake) { return stack_loss(real, fake); }

std::vector<double> feature_matching_loss(const std::vector<FeatureStack>& real_per_scale,
                                          const std::vector<FeatureStack>& fake_per_scale) {
  if (real_per_scale.size() != fake_per_scale.size())
    throw ShapeMismatch(std::to_string(real_per_scale.size()) + " real scales vs " +
                        std::to_string(fake_per_scale.size()) + " fake scales");
  std::vector<double> out;
  out.reserve(real_per_scale.size());
  for (std::size_t k = 0; k < real_per_scale.size(); ++k) out.push_back(stack_loss(real_per_scale[k], fake_per_scale[k]));
  return out;
}

double hinge_d_loss(std::span<const double> d_real, std::span<const double> d_fake) {
  require_scores(d_real, "d_real");
  require_scores(d_fake, "d_fake");
  double real_term = 0.0, fake_term = 0.0;
  for (double d : d_real) real_term += std::min(0.0, -1.0 + d);
  for (double d : d_fake) fake_term += std::min(0.0, -1.0 - d);
  return -real_term / static_cast<double>(d_real.size()) - fake_term / static_cast<double>(d_fake.size());
}

double hinge_g_loss(std::span<const double> d_fake) {
  require_scores(d_fake, "d_fake");
  double sum = 0.0;
  for (double d : d_fake) sum += d;
  return -sum / static_cast<double>(d_fake.size());
}

double total_loss(double percept, std::span<const double> fm_per_scale, std::span<const double> adv_per_scale,
                  double alpha, double beta) {
  if (fm_per_scale.size() != adv_per_scale.size())
    throw LengthMismatch(std::to_string(fm_per_scale.size()) + " feature-matching terms vs " +
                         std::to_string(adv_per_scale.size()) + " adversarial terms");
  double total = alpha * percept;
  for (std::size_t k = 0; k < fm_per_scale.size(); ++k) total += beta * fm_per_scale[k] + adv_per_scale[k];
  return total;
}

}  // namespace superstyle

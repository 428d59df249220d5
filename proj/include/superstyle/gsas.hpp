#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "superstyle/spse.hpp"

namespace superstyle {

// Weights of the two-channel 1x1 convolution that scores entry pairs.
struct GsasParams {
  double w1 = 0.0;  // on the row-tiled channel, a[i] at (i, j)
  double w2 = 0.0;  // on its transpose, a[j] at (i, j)
  double bias = 0.0;
  double leaky_slope = 0.2;

  bool operator==(const GsasParams&) const = default;
};

struct GsasOptions {
  // Scale the aggregated vector by 1/N. Off gives plain attention-weighted sums.
  bool average = true;
};

// Throws std::invalid_argument on non-finite values or a slope outside (0, 1).
void validate(const GsasParams& params);

// Seeded uniform draw of w1, w2 and bias in [-0.1, 0.1].
GsasParams random_params(std::uint64_t seed);

struct AttentionTrace {
  std::size_t n = 0;
  std::vector<double> pre;     // w1 a[i] + w2 a[j] + bias, row-major N x N
  std::vector<double> e;       // LeakyReLU(pre)
  std::vector<double> s;       // row softmax of e
  std::vector<double> a_prime;
  std::vector<double> output;  // a + a_prime
};

AttentionTrace gsas_forward(std::span<const double> a, const GsasParams& params, const GsasOptions& options = {});

struct GsasGradients {
  std::vector<double> a;
  double w1 = 0.0;
  double w2 = 0.0;
  double bias = 0.0;
};

// Gradients of <upstream, output> with respect to the input vector and the parameters.
GsasGradients gsas_backward(std::span<const double> a, const GsasParams& params, std::span<const double> upstream,
                            const GsasOptions& options = {});

// Applies gsas_forward to every present label's code. The raw codes are not touched.
StyleCodes gsas_refine_codes(const StyleCodes& codes, const GsasParams& params, const GsasOptions& options = {});

}  // namespace superstyle

#include "superstyle/gsas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "superstyle/errors.hpp"

namespace superstyle {
namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values)
    if (!std::isfinite(v)) throw NonFinite(std::string(what) + " contains a non-finite value");
}

}  // namespace

void validate(const GsasParams& params) {
  if (!std::isfinite(params.w1) || !std::isfinite(params.w2) || !std::isfinite(params.bias) ||
      !std::isfinite(params.leaky_slope))
    throw std::invalid_argument("gsas parameters must be finite");
  if (!(params.leaky_slope > 0.0 && params.leaky_slope < 1.0))
    throw std::invalid_argument("leaky_slope must lie in (0, 1)");
}

GsasParams random_params(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  GsasParams p;
  p.w1 = dist(rng);
  p.w2 = dist(rng);
  p.bias = dist(rng);
  return p;
}

AttentionTrace gsas_forward(std::span<const double> a, const GsasParams& params, const GsasOptions& options) {
  validate(params);
  if (a.empty()) throw EmptyInput("style vector is empty");
  require_finite(a, "style vector");

  const std::size_t n = a.size();
  AttentionTrace t;
  t.n = n;
  t.pre.resize(n * n);
  t.e.resize(n * n);
  t.s.resize(n * n);
  t.a_prime.resize(n);
  t.output.resize(n);
  const double scale = options.average ? 1.0 / static_cast<double>(n) : 1.0;

  for (std::size_t i = 0; i < n; ++i) {
    double* pre = t.pre.data() + i * n;
    double* e = t.e.data() + i * n;
    double* s = t.s.data() + i * n;
    const double row_term = params.w1 * a[i] + params.bias;
    double row_max = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      pre[j] = row_term + params.w2 * a[j];
      e[j] = pre[j] > 0.0 ? pre[j] : params.leaky_slope * pre[j];
      row_max = std::max(row_max, e[j]);
    }
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = std::exp(e[j] - row_max);
      denom += s[j];
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s[j] /= denom;
      acc += s[j] * a[j];
    }
    t.a_prime[i] = scale * acc;
    t.output[i] = a[i] + t.a_prime[i];
  }
  require_finite(t.e, "attention scores");
  require_finite(t.output, "attention output");
  return t;
}

GsasGradients gsas_backward(std::span<const double> a, const GsasParams& params, std::span<const double> upstream,
                            const GsasOptions& options) {
  if (upstream.size() != a.size())
    throw LengthMismatch("upstream gradient has " + std::to_string(upstream.size()) + " entries, expected " +
                         std::to_string(a.size()));
  require_finite(upstream, "upstream gradient");
  const AttentionTrace t = gsas_forward(a, params, options);
  const std::size_t n = a.size();
  const double scale = options.average ? 1.0 / static_cast<double>(n) : 1.0;

  GsasGradients g;
  g.a.assign(upstream.begin(), upstream.end());  // residual path
  for (std::size_t i = 0; i < n; ++i) {
    const double* s = t.s.data() + i * n;
    const double* pre = t.pre.data() + i * n;
    const double gi = scale * upstream[i];
    if (gi == 0.0) continue;
    // Weighted mean of a under row i's attention.
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) mean += s[j] * a[j];
    for (std::size_t j = 0; j < n; ++j) {
      g.a[j] += gi * s[j];  // through the aggregated value a[j]
      const double d_e = gi * s[j] * (a[j] - mean);
      const double d_pre = pre[j] > 0.0 ? d_e : params.leaky_slope * d_e;
      g.w1 += d_pre * a[i];
      g.w2 += d_pre * a[j];
      g.bias += d_pre;
      g.a[i] += d_pre * params.w1;
      g.a[j] += d_pre * params.w2;
    }
  }
  return g;
}

StyleCodes gsas_refine_codes(const StyleCodes& codes, const GsasParams& params, const GsasOptions& options) {
  StyleCodes out = codes;
  for (auto& label : out.labels) {
    if (!label.present) continue;
    try {
      label.code = gsas_forward(label.code, params, options).output;
    } catch (const NonFinite& err) {
      throw NonFinite("label " + std::to_string(label.id) + ": " + err.what());
    }
  }
  return out;
}

}  // namespace superstyle

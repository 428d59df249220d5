#pragma once

// Independent reference computations used by the unit and acceptance suites.
// Nothing here calls into the library's numeric paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace superstyle::oracle {

// Textbook sRGB (D65) -> CIELAB in long double.
inline std::array<long double, 3> srgb_to_lab(int r, int g, int b) {
  auto lin = [](int c) {
    const long double v = c / 255.0L;
    return v <= 0.04045L ? v / 12.92L : std::pow((v + 0.055L) / 1.055L, 2.4L);
  };
  const long double R = lin(r), G = lin(g), B = lin(b);
  const long double X = 0.4124564L * R + 0.3575761L * G + 0.1804375L * B;
  const long double Y = 0.2126729L * R + 0.7151522L * G + 0.0721750L * B;
  const long double Z = 0.0193339L * R + 0.1191920L * G + 0.9503041L * B;
  const long double Xn = 0.95047L, Yn = 1.0L, Zn = 1.08883L;
  auto f = [](long double t) {
    const long double eps = 216.0L / 24389.0L, kappa = 24389.0L / 27.0L;
    return t > eps ? std::cbrt(t) : (kappa * t + 16.0L) / 116.0L;
  };
  const long double fx = f(X / Xn), fy = f(Y / Yn), fz = f(Z / Zn);
  return {116.0L * fy - 16.0L, 500.0L * (fx - fy), 200.0L * (fy - fz)};
}

// Exhaustive nearest center over 5-D points, lowest index on ties.
inline std::vector<int> nearest_centers(const std::vector<std::array<double, 5>>& points,
                                        const std::vector<std::array<double, 5>>& centers) {
  std::vector<int> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    long double best = std::numeric_limits<long double>::infinity();
    int arg = -1;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      long double d = 0;
      for (int i = 0; i < 5; ++i) {
        const long double diff = static_cast<long double>(points[p][i]) - centers[c][i];
        d += diff * diff;
      }
      if (d < best) {
        best = d;
        arg = static_cast<int>(c);
      }
    }
    out[p] = arg;
  }
  return out;
}

// Direct extended-precision evaluation of the attention map:
// out_i = a_i + scale * sum_j softmax_j(leaky(w1 a_i + w2 a_j + b)) a_j.
inline std::vector<long double> attention_output(std::span<const double> a, long double w1, long double w2,
                                                 long double bias, long double slope, bool average) {
  const std::size_t n = a.size();
  std::vector<long double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long double> e(n);
    long double denom = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long double z = w1 * a[i] + w2 * a[j] + bias;
      e[j] = std::exp(z > 0 ? z : slope * z);
      denom += e[j];
    }
    long double acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += e[j] / denom * a[j];
    out[i] = a[i] + (average ? acc / n : acc);
  }
  return out;
}

// Scalar objective <upstream, output> used for finite differences.
inline long double attention_objective(std::span<const long double> a, long double w1, long double w2,
                                       long double bias, long double slope, std::span<const double> upstream,
                                       bool average) {
  const std::size_t n = a.size();
  long double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long double> e(n);
    long double denom = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long double z = w1 * a[i] + w2 * a[j] + bias;
      e[j] = std::exp(z > 0 ? z : slope * z);
      denom += e[j];
    }
    long double acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += e[j] / denom * a[j];
    total += upstream[i] * (a[i] + (average ? acc / n : acc));
  }
  return total;
}

struct FiniteDifferenceGradients {
  std::vector<double> a;
  double w1 = 0, w2 = 0, bias = 0;
};

// Central differences of <upstream, output>, evaluated in long double.
inline FiniteDifferenceGradients central_differences(std::span<const double> input, long double w1, long double w2,
                                                     long double bias, long double slope,
                                                     std::span<const double> upstream, bool average,
                                                     long double eps = 1e-5L) {
  std::vector<long double> a(input.begin(), input.end());
  // Keep every perturbed pre-activation on its side of the leaky kink: a step
  // that crosses zero measures an average of two slopes, not the derivative.
  long double nearest = std::numeric_limits<long double>::infinity(), largest = 1;
  for (long double x : a) largest = std::max(largest, std::abs(x));
  for (long double x : a)
    for (long double y : a) nearest = std::min(nearest, std::abs(w1 * x + w2 * y + bias));
  const long double reach = std::max(largest, std::abs(w1) + std::abs(w2));
  if (nearest > 0) eps = std::min(eps, nearest / (2 * reach));
  FiniteDifferenceGradients g;
  g.a.resize(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const long double keep = a[k];
    a[k] = keep + eps;
    const long double plus = attention_objective(a, w1, w2, bias, slope, upstream, average);
    a[k] = keep - eps;
    const long double minus = attention_objective(a, w1, w2, bias, slope, upstream, average);
    a[k] = keep;
    g.a[k] = static_cast<double>((plus - minus) / (2 * eps));
  }
  g.w1 = static_cast<double>(attention_objective(a, w1 + eps, w2, bias, slope, upstream, average) -
          attention_objective(a, w1 - eps, w2, bias, slope, upstream, average)) /
         (2 * eps);
  g.w2 = static_cast<double>(attention_objective(a, w1, w2 + eps, bias, slope, upstream, average) -
          attention_objective(a, w1, w2 - eps, bias, slope, upstream, average)) /
         (2 * eps);
  g.bias = static_cast<double>(attention_objective(a, w1, w2, bias + eps, slope, upstream, average) -
            attention_objective(a, w1, w2, bias - eps, slope, upstream, average)) /
           (2 * eps);
  return g;
}

// |analytic - numeric| / max(|analytic|, |numeric|), floored at 1e-8 so exact zeros compare cleanly.
inline double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max(1e-8, std::max(std::abs(analytic), std::abs(numeric)));
}

// Piecewise-linear interpolant of samples placed at j / (m - 1), evaluated at i / (n - 1).
inline std::vector<double> linear_resample(const std::vector<double>& raw, int n) {
  std::vector<double> out(n);
  const double m1 = static_cast<double>(raw.size()) - 1;
  for (int i = 0; i < n; ++i) {
    const double pos = n == 1 ? 0.0 : m1 * i / (n - 1);
    const std::size_t j = std::min(static_cast<std::size_t>(pos), raw.size() - 1);
    const double t = pos - j;
    out[i] = j + 1 < raw.size() ? raw[j] * (1 - t) + raw[j + 1] * t : raw[j];
  }
  return out;
}

}  // namespace superstyle::oracle

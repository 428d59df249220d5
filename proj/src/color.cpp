#include "superstyle/color.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace superstyle {
namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Linear sRGB -> XYZ for the D65 white point.
constexpr Mat3 kRgbToXyz = {{{0.4124564, 0.3575761, 0.1804375},
                             {0.2126729, 0.7151522, 0.0721750},
                             {0.0193339, 0.1191920, 0.9503041}}};

constexpr Mat3 invert(const Mat3& m) {
  const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
  return {{{c00 / det, (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det, (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det},
           {c01 / det, (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det, (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det},
           {c02 / det, (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det, (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det}}};
}

constexpr Mat3 kXyzToRgb = invert(kRgbToXyz);

// Reference white is the image of linear (1,1,1), so neutrals land exactly on a = b = 0.
constexpr std::array<double, 3> kWhite = {kRgbToXyz[0][0] + kRgbToXyz[0][1] + kRgbToXyz[0][2],
                                          kRgbToXyz[1][0] + kRgbToXyz[1][1] + kRgbToXyz[1][2],
                                          kRgbToXyz[2][0] + kRgbToXyz[2][1] + kRgbToXyz[2][2]};

constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double decode_gamma(double v) { return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4); }

double encode_gamma(double v) { return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055; }

double lab_f(double t) { return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0; }

double lab_f_inv(double f) {
  const double cube = f * f * f;
  return cube > kEpsilon ? cube : (116.0 * f - 16.0) / kKappa;
}

struct LinearTable {
  std::array<double, 256> values{};
  LinearTable() {
    for (int i = 0; i < 256; ++i) values[i] = decode_gamma(i / 255.0);
  }
};

const LinearTable& linear_table() {
  static const LinearTable table;
  return table;
}

std::uint8_t quantize(double v) {
  const double scaled = std::round(std::clamp(v, 0.0, 1.0) * 255.0);
  return static_cast<std::uint8_t>(scaled);
}

}  // namespace

Lab srgb_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const auto& lin = linear_table().values;
  const double rgb[3] = {lin[r], lin[g], lin[b]};
  double f[3];
  for (int row = 0; row < 3; ++row) {
    const double xyz = kRgbToXyz[row][0] * rgb[0] + kRgbToXyz[row][1] * rgb[1] + kRgbToXyz[row][2] * rgb[2];
    f[row] = lab_f(xyz / kWhite[row]);
  }
  // Neutral inputs give identical ratios up to rounding; pin them so a = b = 0 exactly.
  if (r == g && g == b) f[0] = f[2] = f[1];
  return {116.0 * f[1] - 16.0, 500.0 * (f[0] - f[1]), 200.0 * (f[1] - f[2])};
}

Rgb8 lab_to_rgb(const Lab& lab) {
  const double fy = (lab[0] + 16.0) / 116.0;
  const double fx = fy + lab[1] / 500.0;
  const double fz = fy - lab[2] / 200.0;
  const double xyz[3] = {lab_f_inv(fx) * kWhite[0], lab_f_inv(fy) * kWhite[1], lab_f_inv(fz) * kWhite[2]};
  Rgb8 out{};
  for (int row = 0; row < 3; ++row) {
    const double linear = kXyzToRgb[row][0] * xyz[0] + kXyzToRgb[row][1] * xyz[1] + kXyzToRgb[row][2] * xyz[2];
    out[row] = quantize(encode_gamma(std::max(linear, 0.0)));
  }
  return out;
}

LabXyImage rgb_to_labxy(const RgbImage& img, double spatial_weight) {
  if (img.width <= 0 || img.height <= 0) throw std::invalid_argument("image dimensions must be positive");
  LabXyImage out;
  out.width = img.width;
  out.height = img.height;
  out.data.resize(img.pixel_count() * 5);
  double* dst = out.data.data();
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x, dst += 5) {
      const std::uint8_t* px = img.at(x, y);
      const Lab lab = srgb_to_lab(px[0], px[1], px[2]);
      dst[0] = lab[0];
      dst[1] = lab[1];
      dst[2] = lab[2];
      dst[3] = x * spatial_weight;
      dst[4] = y * spatial_weight;
    }
  }
  return out;
}

}  // namespace superstyle

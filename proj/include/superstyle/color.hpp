#pragma once

#include <array>
#include <cstdint>

#include "superstyle/image.hpp"

namespace superstyle {

using Lab = std::array<double, 3>;
using Rgb8 = std::array<std::uint8_t, 3>;

// sRGB (D65, 2 degree observer) to CIELAB for one pixel.
Lab srgb_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Inverse of srgb_to_lab, rounded and clamped to the 8-bit gamut.
Rgb8 lab_to_rgb(const Lab& lab);

// Converts every pixel to [l, a, b, col * spatial_weight, row * spatial_weight].
LabXyImage rgb_to_labxy(const RgbImage& img, double spatial_weight = 1.0);

}  // namespace superstyle

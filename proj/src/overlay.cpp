#include "lesionseg/overlay.hpp"

#include <algorithm>
#include <cmath>

namespace lesionseg {

BinaryMask mask_boundary(const BinaryMask& mask) {
  BinaryMask out(mask.width(), mask.height(), 0);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      bool edge = false;
      for (int dy = -1; dy <= 1 && !edge; ++dy) {
        for (int dx = -1; dx <= 1 && !edge; ++dx) {
          edge = !mask.contains(x + dx, y + dy) || !mask.at(x + dx, y + dy);
        }
      }
      out.at(x, y) = edge ? 1 : 0;
    }
  }
  return out;
}

RgbImage render_overlay(const RgbImage& img, const BinaryMask& mask, const OverlayStyle& style) {
  require_same_size(img, mask, "render_overlay: mask and image differ in size");
  const BinaryMask boundary = mask_boundary(mask);
  const double a = std::clamp(style.interior_alpha, 0.0, 1.0);
  auto blend = [a](std::uint8_t base, std::uint8_t tint) {
    return static_cast<std::uint8_t>(std::lround((1.0 - a) * base + a * tint));
  };

  RgbImage out = img;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (boundary[i]) {
      out[i] = style.boundary;
    } else if (mask[i] && a > 0.0) {
      out[i] = {blend(out[i].r, style.boundary.r), blend(out[i].g, style.boundary.g),
                blend(out[i].b, style.boundary.b)};
    }
  }
  return out;
}

}  // namespace lesionseg

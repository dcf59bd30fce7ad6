#pragma once

#include "lesionseg/raster.hpp"

namespace lesionseg {

struct OverlayStyle {
  Rgb boundary{0, 255, 0};
  /// Blend factor for tinting the mask interior with the boundary colour; 0 disables.
  double interior_alpha = 0.0;
};

/// Inner boundary: mask pixels with a 3x3 neighbour outside the mask, where
/// pixels beyond the image edge count as outside.
BinaryMask mask_boundary(const BinaryMask& mask);

RgbImage render_overlay(const RgbImage& img, const BinaryMask& mask, const OverlayStyle& style = {});

}  // namespace lesionseg

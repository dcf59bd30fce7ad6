#pragma once

#include "lesionseg/raster.hpp"

namespace lesionseg {

inline constexpr int kDefaultDarkThreshold = 30;

/// Marks pixels with max(R,G,B) < dark_threshold that are 4-connected to the
/// image boundary through other such pixels. Dark regions that never touch
/// the edge (lesions) are left alone.
BinaryMask detect_dark_border(const RgbImage& img, int dark_threshold = kDefaultDarkThreshold);

/// Onion-peel fill: each pass assigns every masked pixel that has at least one
/// known 8-neighbour the rounded per-channel mean of those neighbours. Values
/// written in a pass only become readable in the next one.
RgbImage inpaint(const RgbImage& img, const BinaryMask& mask);

RgbImage remove_border(const RgbImage& img, int dark_threshold = kDefaultDarkThreshold);

}  // namespace lesionseg

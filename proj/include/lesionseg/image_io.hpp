#pragma once

#include <filesystem>

#include "lesionseg/raster.hpp"

namespace lesionseg {

/// Decodes an 8-bit PNG or JPEG as RGB; alpha is dropped, grayscale is expanded.
RgbImage load_rgb(const std::filesystem::path& path);

/// Loads a single-channel mask, binarizing at `threshold` (value >= threshold -> 1).
BinaryMask load_mask(const std::filesystem::path& path, int threshold = 128);

void save_rgb(const std::filesystem::path& path, const RgbImage& img);

/// Writes 0 = background, 255 = lesion as an 8-bit single-channel image.
void save_mask(const std::filesystem::path& path, const BinaryMask& mask);

}  // namespace lesionseg

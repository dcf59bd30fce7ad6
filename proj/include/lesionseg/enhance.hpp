#pragma once

#include <cstdint>
#include <vector>

#include "lesionseg/config.hpp"
#include "lesionseg/raster.hpp"

namespace lesionseg {

struct Palette {
  std::vector<Rgb> centroids;

  int k() const noexcept { return static_cast<int>(centroids.size()); }
};

struct Quantization {
  RgbImage image;
  Palette palette;
  /// Weighted assignment cost after each Lloyd assignment step.
  std::vector<double> cost_trace;
};

/// k-means colour quantization in RGB. Centroids are seeded with k-means++
/// from `seed`, refined until no centroid moves 0.5 or more (L-infinity, 8-bit
/// scale), then rounded and de-duplicated. Every pixel is replaced by its
/// nearest palette colour, ties to the lowest palette index.
Quantization kmeans_quantize(const RgbImage& img, int k, std::uint64_t seed, int max_iters = 20);

/// Contrast-limited adaptive histogram equalization of one 8-bit plane.
///
/// The plane is split into a tile_cols x tile_rows grid (padded by
/// reflection when the size is not a multiple of the grid, so all tiles have
/// equal pixel counts). Each tile gets a 256-bin histogram clipped at
/// clip_limit * tile_pixels / 256 with the excess spread evenly over all bins,
/// and an equalizing lookup table. Output pixels bilinearly interpolate the
/// four nearest tile tables, using tile centres as anchors.
ChannelPlane clahe(const ChannelPlane& plane, double clip_limit, int tile_cols, int tile_rows);

/// quantize -> RGB to HSV -> split -> per-plane CLAHE -> merge.
HsvImage enhance(const RgbImage& img, const PipelineConfig& cfg);

}  // namespace lesionseg

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "lesionseg/config.hpp"
#include "lesionseg/raster.hpp"
#include "lesionseg/seed_init.hpp"

namespace lesionseg {

struct SegmentationResult {
  BinaryMask mask;  // 1 = lesion
  std::vector<double> energy_trace;
  int iterations_run = 0;
  InitMode init_mode;
};

/// Border removal -> enhancement -> green seed mask -> init choice ->
/// trimap -> GrabCut. With ModelSpace::kEnhanced the colour models see the
/// enhanced H, S, V planes as an 8-bit three-channel image; with kRaw they
/// see the border-cleaned RGB input. All randomness derives from cfg.seed.
/// Stage errors are rethrown with the stage name prepended.
SegmentationResult run_pipeline(const RgbImage& img, const PipelineConfig& cfg);

/// FNV-1a 64-bit; stable across platforms and runs.
std::uint64_t stable_hash(std::string_view text) noexcept;

/// Seed used for one image in a batch: base ^ stable_hash(image_id).
inline std::uint64_t image_seed(std::uint64_t base, std::string_view image_id) noexcept {
  return base ^ stable_hash(image_id);
}

}  // namespace lesionseg

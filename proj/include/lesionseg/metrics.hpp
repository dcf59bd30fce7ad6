#pragma once

#include <cstdint>
#include <span>

#include "lesionseg/raster.hpp"

namespace lesionseg {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Per-pixel tally with 1 = lesion in both masks.
ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt);

/// TP / (TP + FP + FN); 1.0 when both masks are empty.
double jaccard(const ConfusionCounts& c) noexcept;

double mean_jaccard(std::span<const double> values);

}  // namespace lesionseg

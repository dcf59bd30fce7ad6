#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lesionseg/raster.hpp"

namespace lesionseg::detail {

struct KMeansResult {
  std::vector<Vec3> centroids;
  std::vector<int> assignment;
  /// Weighted sum of squared distances after each assignment step.
  std::vector<double> cost_trace;
  int iterations = 0;
};

double squared_distance(const Vec3& a, const Vec3& b) noexcept;

/// Index of the nearest centroid; ties go to the lowest index.
int nearest(const Vec3& p, std::span<const Vec3> centroids) noexcept;

/// Weighted k-means with k-means++ seeding. Seeding stops early once every
/// point coincides with a chosen centre, so the effective k never exceeds the
/// number of distinct points. Lloyd iterations stop when no centroid moves
/// more than `tolerance` (L-infinity) or after `max_iters`.
KMeansResult weighted_kmeans(std::span<const Vec3> points, std::span<const double> weights, int k,
                             std::uint64_t seed, int max_iters, double tolerance);

}  // namespace lesionseg::detail

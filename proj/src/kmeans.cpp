#include "kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lesionseg::detail {

namespace {

// Portable uniform in [0,1): std::uniform_real_distribution is not specified
// bit-for-bit across standard libraries.
double next_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t sample_index(std::span<const double> mass, double total, std::mt19937_64& rng) {
  const double target = next_unit(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] <= 0.0) continue;
    acc += mass[i];
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;
}

double assign_all(std::span<const Vec3> points, std::span<const double> weights,
                  std::span<const Vec3> centroids, std::vector<int>& assignment) {
  double cost = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int c = nearest(points[i], centroids);
    assignment[i] = c;
    cost += weights[i] * squared_distance(points[i], centroids[static_cast<std::size_t>(c)]);
  }
  return cost;
}

}  // namespace

double squared_distance(const Vec3& a, const Vec3& b) noexcept {
  const double d0 = a[0] - b[0];
  const double d1 = a[1] - b[1];
  const double d2 = a[2] - b[2];
  return d0 * d0 + d1 * d1 + d2 * d2;
}

int nearest(const Vec3& p, std::span<const Vec3> centroids) noexcept {
  int best = 0;
  double best_d = squared_distance(p, centroids[0]);
  for (std::size_t c = 1; c < centroids.size(); ++c) {
    const double d = squared_distance(p, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

KMeansResult weighted_kmeans(std::span<const Vec3> points, std::span<const double> weights, int k,
                             std::uint64_t seed, int max_iters, double tolerance) {
  KMeansResult result;
  if (points.empty() || k < 1) return result;

  std::mt19937_64 rng(seed);
  const std::size_t n = points.size();

  double total_weight = 0.0;
  for (const double w : weights) total_weight += w;
  result.centroids.push_back(points[sample_index(weights, total_weight, rng)]);

  std::vector<double> dist(n);
  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = squared_distance(points[i], result.centroids[0]);

  while (static_cast<int>(result.centroids.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mass[i] = weights[i] * dist[i];
      total += mass[i];
    }
    if (total <= 0.0) break;
    const Vec3 next = points[sample_index(mass, total, rng)];
    result.centroids.push_back(next);
    for (std::size_t i = 0; i < n; ++i) dist[i] = std::min(dist[i], squared_distance(points[i], next));
  }

  const std::size_t kc = result.centroids.size();
  result.assignment.assign(n, 0);
  std::vector<Vec3> sums(kc);
  std::vector<double> mass_per(kc);

  for (int iter = 0; iter < max_iters; ++iter) {
    result.cost_trace.push_back(assign_all(points, weights, result.centroids, result.assignment));
    result.iterations = iter + 1;

    std::fill(sums.begin(), sums.end(), Vec3{0, 0, 0});
    std::fill(mass_per.begin(), mass_per.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(result.assignment[i]);
      for (int d = 0; d < 3; ++d) sums[c][d] += weights[i] * points[i][d];
      mass_per[c] += weights[i];
    }
    double moved = 0.0;
    for (std::size_t c = 0; c < kc; ++c) {
      if (mass_per[c] <= 0.0) continue;  // empty cluster keeps its centre
      for (int d = 0; d < 3; ++d) {
        const double updated = sums[c][d] / mass_per[c];
        moved = std::max(moved, std::fabs(updated - result.centroids[c][d]));
        result.centroids[c][d] = updated;
      }
    }
    if (moved < tolerance) break;
  }
  result.cost_trace.push_back(assign_all(points, weights, result.centroids, result.assignment));
  return result;
}

}  // namespace lesionseg::detail

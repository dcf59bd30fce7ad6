#include "lesionseg/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "kmeans.hpp"

namespace lesionseg {

namespace {

const double kHalfLog2Pi3 = 1.5 * std::log(2.0 * std::numbers::pi);

double determinant(const Mat3& c) noexcept {
  return c[0] * (c[4] * c[8] - c[5] * c[7]) - c[1] * (c[3] * c[8] - c[5] * c[6]) +
         c[2] * (c[3] * c[7] - c[4] * c[6]);
}

Mat3 inverse(const Mat3& c, double det) noexcept {
  Mat3 inv;
  inv[0] = (c[4] * c[8] - c[5] * c[7]) / det;
  inv[1] = -(c[1] * c[8] - c[2] * c[7]) / det;
  inv[2] = (c[1] * c[5] - c[2] * c[4]) / det;
  inv[3] = -(c[3] * c[8] - c[5] * c[6]) / det;
  inv[4] = (c[0] * c[8] - c[2] * c[6]) / det;
  inv[5] = -(c[0] * c[5] - c[2] * c[3]) / det;
  inv[6] = (c[3] * c[7] - c[4] * c[6]) / det;
  inv[7] = -(c[0] * c[7] - c[1] * c[6]) / det;
  inv[8] = (c[0] * c[4] - c[1] * c[3]) / det;
  return inv;
}

struct Accumulator {
  double mass = 0.0;
  Vec3 sum{};
};

// Two-pass estimate: means first, then centred second moments.
GmmModel estimate(std::span<const Vec3> points, std::span<const double> weights, std::span<const int> groups,
                  int group_count, double floor) {
  const auto kc = static_cast<std::size_t>(group_count);
  std::vector<Accumulator> acc(kc);
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto& a = acc[static_cast<std::size_t>(groups[i])];
    a.mass += weights[i];
    for (int d = 0; d < 3; ++d) a.sum[d] += weights[i] * points[i][d];
    total += weights[i];
  }

  std::vector<Vec3> means(kc);
  for (std::size_t k = 0; k < kc; ++k) {
    if (acc[k].mass > 0.0) {
      for (int d = 0; d < 3; ++d) means[k][d] = acc[k].sum[d] / acc[k].mass;
    }
  }
  std::vector<Mat3> scatter(kc, Mat3{});
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto k = static_cast<std::size_t>(groups[i]);
    const Vec3 diff{points[i][0] - means[k][0], points[i][1] - means[k][1], points[i][2] - means[k][2]};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) scatter[k][static_cast<std::size_t>(3 * r + c)] += weights[i] * diff[r] * diff[c];
    }
  }

  std::vector<GaussianComponent> components;
  for (std::size_t k = 0; k < kc; ++k) {
    if (acc[k].mass <= 0.0) continue;
    GaussianComponent g;
    g.weight = acc[k].mass / total;
    g.mean = means[k];
    for (std::size_t e = 0; e < 9; ++e) g.covariance[e] = scatter[k][e] / acc[k].mass;
    // Symmetrize against round-off, then load the diagonal.
    for (int r = 0; r < 3; ++r) {
      for (int c = r + 1; c < 3; ++c) {
        const double m = 0.5 * (g.covariance[static_cast<std::size_t>(3 * r + c)] +
                                g.covariance[static_cast<std::size_t>(3 * c + r)]);
        g.covariance[static_cast<std::size_t>(3 * r + c)] = m;
        g.covariance[static_cast<std::size_t>(3 * c + r)] = m;
      }
      g.covariance[static_cast<std::size_t>(4 * r)] += floor;
    }
    components.push_back(g);
  }
  return GmmModel::from_components(std::move(components));
}

}  // namespace

GmmModel GmmModel::from_components(std::vector<GaussianComponent> components) {
  double weight_sum = 0.0;
  for (auto& g : components) {
    const double det = determinant(g.covariance);
    if (!(det > 0.0) || !std::isfinite(det)) {
      throw Error(ErrorCode::kInvalidArgument, "GmmModel: covariance is not positive definite");
    }
    g.inverse = inverse(g.covariance, det);
    g.log_det = std::log(det);
    weight_sum += g.weight;
  }
  if (!components.empty() && weight_sum > 0.0) {
    for (auto& g : components) g.weight /= weight_sum;
  }
  GmmModel model;
  model.components_ = std::move(components);
  return model;
}

double GmmModel::log_weighted_density(int k, const Vec3& x) const noexcept {
  const GaussianComponent& g = components_[static_cast<std::size_t>(k)];
  if (g.weight <= 0.0) return -std::numeric_limits<double>::infinity();
  const double d0 = x[0] - g.mean[0];
  const double d1 = x[1] - g.mean[1];
  const double d2 = x[2] - g.mean[2];
  const Mat3& q = g.inverse;
  const double mahal = d0 * (q[0] * d0 + q[1] * d1 + q[2] * d2) + d1 * (q[3] * d0 + q[4] * d1 + q[5] * d2) +
                       d2 * (q[6] * d0 + q[7] * d1 + q[8] * d2);
  return std::log(g.weight) - kHalfLog2Pi3 - 0.5 * g.log_det - 0.5 * mahal;
}

double GmmModel::neg_log_likelihood(const Vec3& x) const noexcept {
  // Streaming log-sum-exp.
  double peak = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (int k = 0; k < component_count(); ++k) {
    const double t = log_weighted_density(k, x);
    if (!std::isfinite(t)) continue;
    if (t > peak) {
      sum = sum * std::exp(peak - t) + 1.0;
      peak = t;
    } else {
      sum += std::exp(t - peak);
    }
  }
  if (!std::isfinite(peak)) return std::numeric_limits<double>::infinity();
  return -(peak + std::log(sum));
}

double GmmModel::assigned_neg_log_likelihood(const Vec3& x) const noexcept {
  return -log_weighted_density(most_likely_component(x), x);
}

int GmmModel::most_likely_component(const Vec3& x) const noexcept {
  int best_k = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < component_count(); ++k) {
    const double v = log_weighted_density(k, x);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  return best_k;
}

GmmModel fit_gmm(std::span<const Vec3> pixels, int K, std::uint64_t seed, double floor) {
  if (pixels.empty()) throw Error(ErrorCode::kEmptyPixelSet, "fit_gmm: no pixels");
  if (K < 1) throw Error(ErrorCode::kInvalidArgument, "fit_gmm: K must be >= 1");

  std::map<Vec3, double> counts;
  for (const Vec3& p : pixels) counts[p] += 1.0;
  std::vector<Vec3> points;
  std::vector<double> weights;
  points.reserve(counts.size());
  weights.reserve(counts.size());
  for (const auto& [p, c] : counts) {
    points.push_back(p);
    weights.push_back(c);
  }

  constexpr int kMaxIters = 10;
  constexpr double kTolerance = 1e-3;
  const auto clusters = detail::weighted_kmeans(points, weights, K, seed, kMaxIters, kTolerance);
  return estimate(points, weights, clusters.assignment, static_cast<int>(clusters.centroids.size()), floor);
}

GmmModel refit_gmm(std::span<const Vec3> pixels, std::span<const int> components, int K, double floor) {
  if (pixels.empty()) throw Error(ErrorCode::kDegenerateClass, "refit_gmm: class has no pixels");
  if (components.size() != pixels.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "refit_gmm: one component index per pixel required");
  }
  for (const int c : components) {
    if (c < 0 || c >= K) throw Error(ErrorCode::kInvalidArgument, "refit_gmm: component index out of range");
  }
  const std::vector<double> ones(pixels.size(), 1.0);
  return estimate(pixels, ones, components, K, floor);
}

}  // namespace lesionseg

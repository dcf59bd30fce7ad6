#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lesionseg/raster.hpp"

namespace lesionseg {

/// Diagonal load added to every fitted covariance (8-bit colour units).
inline constexpr double kCovarianceFloor = 1.0;

using Mat3 = std::array<double, 9>;  // row-major

struct GaussianComponent {
  double weight = 0.0;
  Vec3 mean{};
  Mat3 covariance{};
  Mat3 inverse{};
  double log_det = 0.0;
};

class GmmModel {
 public:
  GmmModel() = default;

  /// Takes weight, mean and covariance of each component and caches the
  /// inverse and log-determinant. Throws kInvalidArgument for a covariance
  /// that is not positive definite.
  static GmmModel from_components(std::vector<GaussianComponent> components);

  int component_count() const noexcept { return static_cast<int>(components_.size()); }
  const GaussianComponent& component(int k) const { return components_.at(static_cast<std::size_t>(k)); }
  std::span<const GaussianComponent> components() const noexcept { return components_; }

  /// log(w_k N(x; mu_k, Sigma_k)).
  double log_weighted_density(int k, const Vec3& x) const noexcept;

  /// -log sum_k w_k N(x; mu_k, Sigma_k), evaluated with log-sum-exp.
  double neg_log_likelihood(const Vec3& x) const noexcept;

  /// min_k -log(w_k N_k(x)), the cost of the best single component.
  double assigned_neg_log_likelihood(const Vec3& x) const noexcept;

  /// argmax_k w_k N_k(x); ties to the lowest index.
  int most_likely_component(const Vec3& x) const noexcept;

 private:
  std::vector<GaussianComponent> components_;
};

/// k-means (k-means++ seeded from `seed`) into min(K, distinct pixels) groups,
/// then weight = group fraction, mean = group mean, covariance = group
/// covariance + floor * I.
GmmModel fit_gmm(std::span<const Vec3> pixels, int K, std::uint64_t seed, double floor = kCovarianceFloor);

/// Hard-assignment refit: component k is estimated from the pixels with
/// components[i] == k. Components left without pixels are dropped.
/// Throws kDegenerateClass when `pixels` is empty.
GmmModel refit_gmm(std::span<const Vec3> pixels, std::span<const int> components, int K,
                   double floor = kCovarianceFloor);

inline double gmm_neg_log_likelihood(const GmmModel& model, const Vec3& pixel) noexcept {
  return model.neg_log_likelihood(pixel);
}

}  // namespace lesionseg

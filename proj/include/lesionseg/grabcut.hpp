#pragma once

#include <cstdint>
#include <vector>

#include "lesionseg/config.hpp"
#include "lesionseg/gmm.hpp"
#include "lesionseg/max_flow.hpp"
#include "lesionseg/raster.hpp"
#include "lesionseg/seed_init.hpp"

namespace lesionseg {

struct GraphParams {
  double gamma = 50.0;
  double beta = 0.0;
  DataTerm data_term = DataTerm::kMixture;
};

/// 1 / (2 * mean squared colour difference over all 8-connected pairs);
/// 0 for images without contrast.
double compute_beta(const RgbImage& img);

/// Calls fn(i, j, inverse_distance) once per unordered 8-connected pair.
template <typename Fn>
void for_each_neighbor_pair(int width, int height, Fn&& fn) {
  constexpr double kDiagonal = 0.70710678118654752440;  // 1/sqrt(2)
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
      if (x + 1 < width) fn(i, i + 1, 1.0);
      if (y + 1 < height) {
        const std::size_t below = i + static_cast<std::size_t>(width);
        fn(i, below, 1.0);
        if (x + 1 < width) fn(i, below + 1, kDiagonal);
        if (x > 0) fn(i, below - 1, kDiagonal);
      }
    }
  }
}

/// gamma / dist * exp(-beta * |z_m - z_n|^2)
double pair_weight(Rgb a, Rgb b, double inverse_distance, const GraphParams& params) noexcept;

double data_cost(const GmmModel& model, const Vec3& pixel, DataTerm term) noexcept;

/// Terminal and neighbour capacities for one cut. Probable pixels get the
/// background cost towards the source and the foreground cost towards the
/// sink; Sure pixels get a capacity of 9 * gamma + max data cost towards
/// their own terminal and 0 towards the other.
FlowNetwork build_graph(const RgbImage& img, const Trimap& trimap, const GmmModel& fg, const GmmModel& bg,
                        const GraphParams& params);

/// Sum of per-pixel data costs under each pixel's label plus the pair
/// weights of every neighbour pair whose labels differ. `labels`: 1 = fg.
double compute_energy(const RgbImage& img, const BinaryMask& labels, const GmmModel& fg, const GmmModel& bg,
                      const GraphParams& params);

/// Component index within each pixel's current class model.
std::vector<int> assign_components(const RgbImage& img, const BinaryMask& labels, const GmmModel& fg,
                                   const GmmModel& bg);

/// One min-cut labelling for fixed colour models. Sure pixels keep their
/// trimap side.
BinaryMask cut_labels(const RgbImage& img, const Trimap& trimap, const GmmModel& fg, const GmmModel& bg,
                      const GraphParams& params);

struct GrabCutResult {
  BinaryMask mask;
  /// Energy of the initial labelling followed by the energy after each cut.
  std::vector<double> energy_trace;
  int iterations_run = 0;
};

/// Iterated graph cut. Each iteration reassigns components, refits both
/// models from the current labels, cuts, and relabels Probable pixels. A
/// refit that would raise the energy of the current labelling is discarded.
/// Stops early when labels stop changing or a class becomes empty.
GrabCutResult grabcut(const RgbImage& img, const Trimap& trimap, const PipelineConfig& cfg, std::uint64_t seed);

}  // namespace lesionseg

#include "lesionseg/grabcut.hpp"

#include <algorithm>
#include <cmath>

namespace lesionseg {

namespace {

double squared_diff(Rgb a, Rgb b) noexcept {
  const double dr = double(a.r) - b.r;
  const double dg = double(a.g) - b.g;
  const double db = double(a.b) - b.b;
  return dr * dr + dg * dg + db * db;
}

BinaryMask initial_labels(const Trimap& trimap) {
  BinaryMask labels(trimap.width(), trimap.height(), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = is_foreground_side(trimap[i]) ? 1 : 0;
  return labels;
}

struct ClassPixels {
  std::vector<Vec3> fg;
  std::vector<Vec3> bg;
};

ClassPixels gather(const RgbImage& img, const BinaryMask& labels) {
  ClassPixels out;
  for (std::size_t i = 0; i < img.size(); ++i) (labels[i] ? out.fg : out.bg).push_back(to_vec3(img[i]));
  return out;
}

}  // namespace

double compute_beta(const RgbImage& img) {
  double sum = 0.0;
  std::size_t pairs = 0;
  for_each_neighbor_pair(img.width(), img.height(), [&](std::size_t i, std::size_t j, double) {
    sum += squared_diff(img[i], img[j]);
    ++pairs;
  });
  if (pairs == 0 || sum <= 0.0) return 0.0;
  return 1.0 / (2.0 * sum / static_cast<double>(pairs));
}

double pair_weight(Rgb a, Rgb b, double inverse_distance, const GraphParams& params) noexcept {
  return params.gamma * inverse_distance * std::exp(-params.beta * squared_diff(a, b));
}

double data_cost(const GmmModel& model, const Vec3& pixel, DataTerm term) noexcept {
  return term == DataTerm::kMixture ? model.neg_log_likelihood(pixel) : model.assigned_neg_log_likelihood(pixel);
}

FlowNetwork build_graph(const RgbImage& img, const Trimap& trimap, const GmmModel& fg, const GmmModel& bg,
                        const GraphParams& params) {
  require_same_size(trimap, img, "build_graph: trimap and image differ in size");
  const std::size_t n = img.size();

  std::vector<double> fg_cost(n);
  std::vector<double> bg_cost(n);
  double max_cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 z = to_vec3(img[i]);
    fg_cost[i] = std::max(0.0, data_cost(fg, z, params.data_term));
    bg_cost[i] = std::max(0.0, data_cost(bg, z, params.data_term));
    max_cost = std::max({max_cost, fg_cost[i], bg_cost[i]});
  }
  const double large = 9.0 * params.gamma + max_cost;

  FlowNetwork net(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const int node = static_cast<int>(i);
    switch (trimap[i]) {
      case TrimapLabel::kSureBackground: net.set_terminals(node, 0.0, large); break;
      case TrimapLabel::kSureForeground: net.set_terminals(node, large, 0.0); break;
      default: net.set_terminals(node, bg_cost[i], fg_cost[i]); break;
    }
  }
  for_each_neighbor_pair(img.width(), img.height(), [&](std::size_t i, std::size_t j, double inv_dist) {
    net.add_edge(static_cast<int>(i), static_cast<int>(j), pair_weight(img[i], img[j], inv_dist, params));
  });
  return net;
}

double compute_energy(const RgbImage& img, const BinaryMask& labels, const GmmModel& fg, const GmmModel& bg,
                      const GraphParams& params) {
  require_same_size(img, labels, "compute_energy: labels and image differ in size");
  double data = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    data += data_cost(labels[i] ? fg : bg, to_vec3(img[i]), params.data_term);
  }
  double smooth = 0.0;
  for_each_neighbor_pair(img.width(), img.height(), [&](std::size_t i, std::size_t j, double inv_dist) {
    if (labels[i] != labels[j]) smooth += pair_weight(img[i], img[j], inv_dist, params);
  });
  return data + smooth;
}

std::vector<int> assign_components(const RgbImage& img, const BinaryMask& labels, const GmmModel& fg,
                                   const GmmModel& bg) {
  require_same_size(img, labels, "assign_components: labels and image differ in size");
  std::vector<int> out(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) {
    out[i] = (labels[i] ? fg : bg).most_likely_component(to_vec3(img[i]));
  }
  return out;
}

BinaryMask cut_labels(const RgbImage& img, const Trimap& trimap, const GmmModel& fg, const GmmModel& bg,
                      const GraphParams& params) {
  const FlowResult cut = max_flow(build_graph(img, trimap, fg, bg, params));
  BinaryMask labels(img.width(), img.height(), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const TrimapLabel t = trimap[i];
    labels[i] = is_sure(t) ? (is_foreground_side(t) ? 1 : 0) : cut.source_side[i];
  }
  return labels;
}

GrabCutResult grabcut(const RgbImage& img, const Trimap& trimap, const PipelineConfig& cfg, std::uint64_t seed) {
  require_same_size(trimap, img, "grabcut: trimap and image differ in size");

  GrabCutResult result;
  BinaryMask labels = initial_labels(trimap);
  ClassPixels pixels = gather(img, labels);

  GmmModel fg = fit_gmm(pixels.fg, cfg.gmm_K, seed);
  GmmModel bg = fit_gmm(pixels.bg, cfg.gmm_K, seed + 1);
  const GraphParams params{cfg.gamma, compute_beta(img), cfg.data_term};

  result.energy_trace.push_back(compute_energy(img, labels, fg, bg, params));

  for (int iter = 1; iter <= cfg.grabcut_iterations; ++iter) {
    const std::vector<int> components = assign_components(img, labels, fg, bg);
    std::vector<int> fg_components;
    std::vector<int> bg_components;
    for (std::size_t i = 0; i < img.size(); ++i) (labels[i] ? fg_components : bg_components).push_back(components[i]);

    GmmModel fg_refit = refit_gmm(pixels.fg, fg_components, fg.component_count());
    GmmModel bg_refit = refit_gmm(pixels.bg, bg_components, bg.component_count());
    if (compute_energy(img, labels, fg_refit, bg_refit, params) <= result.energy_trace.back()) {
      fg = std::move(fg_refit);
      bg = std::move(bg_refit);
    }

    BinaryMask next = cut_labels(img, trimap, fg, bg, params);
    result.energy_trace.push_back(compute_energy(img, next, fg, bg, params));
    result.iterations_run = iter;

    const bool changed = next != labels;
    labels = std::move(next);
    if (!changed) break;
    pixels = gather(img, labels);
    if (pixels.fg.empty() || pixels.bg.empty()) break;
  }

  result.mask = std::move(labels);
  return result;
}

}  // namespace lesionseg

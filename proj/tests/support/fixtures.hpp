#pragma once

// Synthetic images with known ground truth.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "lesionseg/max_flow.hpp"
#include "lesionseg/raster.hpp"

namespace lesionseg::testing {

struct LesionFixture {
  RgbImage image;
  BinaryMask truth;
};

struct LesionParams {
  int size = 256;
  double noise_sigma = 10.0;
  int frame = 0;  // black border thickness in pixels, 0 for none
};

inline std::uint8_t clamp_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

/// Dark brown rotated ellipse on a light skin tone, Gaussian noise on every
/// channel, optional solid black frame drawn on top.
inline LesionFixture make_lesion_fixture(std::uint64_t seed, const LesionParams& p = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, p.noise_sigma);
  const double n = p.size;

  const double skin[3] = {215 + 25 * unit(rng), 165 + 30 * unit(rng), 140 + 30 * unit(rng)};
  // Brown: R > G > B with hue well inside the red-yellow sector.
  double lesion[3];
  lesion[0] = 80 + 40 * unit(rng);
  lesion[1] = lesion[0] * (0.5 + 0.2 * unit(rng));
  lesion[2] = lesion[1] * (0.5 + 0.25 * unit(rng));
  const double cx = n * (0.45 + 0.1 * unit(rng));
  const double cy = n * (0.45 + 0.1 * unit(rng));
  const double ax = n * (0.12 + 0.16 * unit(rng));
  const double ay = ax * (0.55 + 0.45 * unit(rng));
  const double theta = std::numbers::pi * unit(rng);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);

  LesionFixture f{RgbImage(p.size, p.size), BinaryMask(p.size, p.size, 0)};
  for (int y = 0; y < p.size; ++y) {
    for (int x = 0; x < p.size; ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      const double u = (dx * ct + dy * st) / ax;
      const double v = (-dx * st + dy * ct) / ay;
      const bool inside = u * u + v * v <= 1.0;
      const double* base = inside ? lesion : skin;
      f.truth.at(x, y) = inside ? 1 : 0;
      f.image.at(x, y) = {clamp_byte(base[0] + noise(rng)), clamp_byte(base[1] + noise(rng)),
                          clamp_byte(base[2] + noise(rng))};
    }
  }
  for (int y = 0; y < p.size; ++y) {
    for (int x = 0; x < p.size; ++x) {
      if (x < p.frame || y < p.frame || x >= p.size - p.frame || y >= p.size - p.frame) f.image.at(x, y) = {0, 0, 0};
    }
  }
  return f;
}

inline RgbImage random_image(int w, int h, std::mt19937_64& rng, int levels = 256) {
  std::uniform_int_distribution<int> d(0, levels - 1);
  const double scale = levels > 1 ? 255.0 / (levels - 1) : 0.0;
  RgbImage img(w, h);
  for (auto& p : img.pixels()) {
    p = {clamp_byte(d(rng) * scale), clamp_byte(d(rng) * scale), clamp_byte(d(rng) * scale)};
  }
  return img;
}

/// Random network: up to `max_nodes` nodes, integer capacities in [0, 10],
/// each node pair joined with probability `density`.
inline FlowNetwork random_network(std::mt19937_64& rng, int max_nodes, double density = 0.5) {
  std::uniform_int_distribution<int> nodes(1, max_nodes);
  std::uniform_int_distribution<int> cap(0, 10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = nodes(rng);
  FlowNetwork net(n);
  for (int i = 0; i < n; ++i) net.set_terminals(i, cap(rng), cap(rng));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unit(rng) < density) net.add_edge(i, j, cap(rng));
    }
  }
  return net;
}

}  // namespace lesionseg::testing

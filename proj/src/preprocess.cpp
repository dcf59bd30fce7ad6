#include "lesionseg/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>

namespace lesionseg {

namespace {

bool is_dark(Rgb p, int threshold) noexcept { return std::max({p.r, p.g, p.b}) < threshold; }

}  // namespace

BinaryMask detect_dark_border(const RgbImage& img, int dark_threshold) {
  const int w = img.width();
  const int h = img.height();
  BinaryMask mask(w, h, 0);
  std::deque<std::pair<int, int>> queue;

  auto seed = [&](int x, int y) {
    if (!mask.at(x, y) && is_dark(img.at(x, y), dark_threshold)) {
      mask.at(x, y) = 1;
      queue.emplace_back(x, y);
    }
  };
  for (int x = 0; x < w; ++x) {
    seed(x, 0);
    seed(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    seed(0, y);
    seed(w - 1, y);
  }

  constexpr std::array<std::pair<int, int>, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    for (const auto& [dx, dy] : kSteps) {
      const int nx = x + dx;
      const int ny = y + dy;
      if (mask.contains(nx, ny)) seed(nx, ny);
    }
  }
  return mask;
}

RgbImage inpaint(const RgbImage& img, const BinaryMask& mask) {
  require_same_size(img, mask, "inpaint: mask and image differ in size");
  const std::size_t masked = count_ones(mask);
  if (masked == 0) return img;
  if (masked == mask.size()) {
    throw Error(ErrorCode::kFullyMaskedImage, "inpaint: mask covers every pixel");
  }

  const int w = img.width();
  const int h = img.height();
  RgbImage out = img;
  std::vector<std::uint8_t> known(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) known[i] = mask[i] ? 0 : 1;

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) pending.push_back(i);
  }

  struct Fill {
    std::size_t index;
    Rgb value;
  };
  std::vector<Fill> layer;
  std::vector<std::size_t> still_pending;
  while (!pending.empty()) {
    layer.clear();
    still_pending.clear();
    for (const std::size_t i : pending) {
      const int x = static_cast<int>(i % static_cast<std::size_t>(w));
      const int y = static_cast<int>(i / static_cast<std::size_t>(w));
      int sum_r = 0, sum_g = 0, sum_b = 0, n = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const std::size_t j = out.index(nx, ny);
          if (!known[j]) continue;
          sum_r += out[j].r;
          sum_g += out[j].g;
          sum_b += out[j].b;
          ++n;
        }
      }
      if (n == 0) {
        still_pending.push_back(i);
        continue;
      }
      auto mean = [n](int sum) {
        return static_cast<std::uint8_t>(std::lround(static_cast<double>(sum) / n));
      };
      layer.push_back({i, {mean(sum_r), mean(sum_g), mean(sum_b)}});
    }
    for (const Fill& f : layer) {
      out[f.index] = f.value;
      known[f.index] = 1;
    }
    pending.swap(still_pending);
  }
  return out;
}

RgbImage remove_border(const RgbImage& img, int dark_threshold) {
  return inpaint(img, detect_dark_border(img, dark_threshold));
}

}  // namespace lesionseg

#include "lesionseg/enhance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "kmeans.hpp"

namespace lesionseg {

namespace {

std::uint32_t pack(Rgb p) noexcept {
  return (std::uint32_t{p.r} << 16) | (std::uint32_t{p.g} << 8) | std::uint32_t{p.b};
}

Rgb unpack(std::uint32_t v) noexcept {
  return {static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
          static_cast<std::uint8_t>(v)};
}

std::uint8_t round_channel(double v) noexcept {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// BORDER_REFLECT_101: ... 2 1 | 0 1 2 ... n-1 | n-2 ...
int reflect101(int i, int n) noexcept {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

using Lut = std::array<std::uint8_t, 256>;

Lut tile_lut(std::array<int, 256>& hist, int tile_pixels, double clip_limit) {
  const int limit = std::max(1, static_cast<int>(clip_limit * tile_pixels / 256.0));
  int excess = 0;
  for (int& bin : hist) {
    if (bin > limit) {
      excess += bin - limit;
      bin = limit;
    }
  }
  const int batch = excess / 256;
  const int residual = excess - batch * 256;
  for (int& bin : hist) bin += batch;
  if (residual > 0) {
    const int step = std::max(256 / residual, 1);
    for (int i = 0, left = residual; i < 256 && left > 0; i += step, --left) ++hist[static_cast<std::size_t>(i)];
  }

  Lut lut{};
  const double scale = 255.0 / tile_pixels;
  int cumulative = 0;
  for (std::size_t v = 0; v < 256; ++v) {
    cumulative += hist[v];
    lut[v] = round_channel(cumulative * scale);
  }
  return lut;
}

}  // namespace

Quantization kmeans_quantize(const RgbImage& img, int k, std::uint64_t seed, int max_iters) {
  if (k < 1) throw Error(ErrorCode::kInvalidK, "kmeans_quantize: k must be >= 1");

  // Cluster the colour histogram; weighted k-means over distinct colours is
  // identical to k-means over all pixels.
  std::map<std::uint32_t, double> counts;
  for (const Rgb p : img.pixels()) counts[pack(p)] += 1.0;
  std::vector<Vec3> colours;
  std::vector<double> weights;
  colours.reserve(counts.size());
  weights.reserve(counts.size());
  for (const auto& [packed, count] : counts) {
    colours.push_back(to_vec3(unpack(packed)));
    weights.push_back(count);
  }

  const auto fit = detail::weighted_kmeans(colours, weights, k, seed, max_iters, 0.5);

  Quantization out;
  out.cost_trace = fit.cost_trace;
  std::vector<Vec3> rounded;
  for (const Vec3& c : fit.centroids) {
    const Rgb p{round_channel(c[0]), round_channel(c[1]), round_channel(c[2])};
    if (std::find(out.palette.centroids.begin(), out.palette.centroids.end(), p) == out.palette.centroids.end()) {
      out.palette.centroids.push_back(p);
      rounded.push_back(to_vec3(p));
    }
  }

  std::map<std::uint32_t, Rgb> mapping;
  for (const Vec3& c : colours) {
    const Rgb src{round_channel(c[0]), round_channel(c[1]), round_channel(c[2])};
    mapping[pack(src)] = out.palette.centroids[static_cast<std::size_t>(detail::nearest(c, rounded))];
  }
  out.image = RgbImage(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) out.image[i] = mapping.at(pack(img[i]));
  return out;
}

ChannelPlane clahe(const ChannelPlane& plane, double clip_limit, int tile_cols, int tile_rows) {
  if (tile_cols < 1 || tile_rows < 1) {
    throw Error(ErrorCode::kTileTooSmall, "clahe: tile grid must be at least 1x1");
  }
  if (!(clip_limit >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "clahe: clip_limit must be >= 1");
  }

  const int w = plane.width();
  const int h = plane.height();
  const int tile_w = (w + tile_cols - 1) / tile_cols;
  const int tile_h = (h + tile_rows - 1) / tile_rows;
  // The last tile must still start inside the image.
  if ((tile_cols - 1) * tile_w >= w || (tile_rows - 1) * tile_h >= h) {
    throw Error(ErrorCode::kTileTooSmall, "clahe: tile grid leaves a tile with no image pixels");
  }
  const int tile_pixels = tile_w * tile_h;

  std::vector<Lut> luts(static_cast<std::size_t>(tile_cols * tile_rows));
  for (int ty = 0; ty < tile_rows; ++ty) {
    for (int tx = 0; tx < tile_cols; ++tx) {
      std::array<int, 256> hist{};
      for (int y = ty * tile_h; y < (ty + 1) * tile_h; ++y) {
        const int sy = reflect101(y, h);
        for (int x = tx * tile_w; x < (tx + 1) * tile_w; ++x) {
          ++hist[plane.at(reflect101(x, w), sy)];
        }
      }
      luts[static_cast<std::size_t>(ty * tile_cols + tx)] = tile_lut(hist, tile_pixels, clip_limit);
    }
  }

  ChannelPlane out(w, h);
  for (int y = 0; y < h; ++y) {
    const double fy = (y + 0.5) / tile_h - 0.5;
    int ty1 = static_cast<int>(std::floor(fy));
    const double wy = fy - ty1;
    int ty2 = ty1 + 1;
    ty1 = std::clamp(ty1, 0, tile_rows - 1);
    ty2 = std::clamp(ty2, 0, tile_rows - 1);
    for (int x = 0; x < w; ++x) {
      const double fx = (x + 0.5) / tile_w - 0.5;
      int tx1 = static_cast<int>(std::floor(fx));
      const double wx = fx - tx1;
      int tx2 = tx1 + 1;
      tx1 = std::clamp(tx1, 0, tile_cols - 1);
      tx2 = std::clamp(tx2, 0, tile_cols - 1);

      const std::uint8_t v = plane.at(x, y);
      auto lut_at = [&](int tx, int ty) {
        return static_cast<double>(luts[static_cast<std::size_t>(ty * tile_cols + tx)][v]);
      };
      const double top = lut_at(tx1, ty1) * (1.0 - wx) + lut_at(tx2, ty1) * wx;
      const double bottom = lut_at(tx1, ty2) * (1.0 - wx) + lut_at(tx2, ty2) * wx;
      out.at(x, y) = round_channel(top * (1.0 - wy) + bottom * wy);
    }
  }
  return out;
}

HsvImage enhance(const RgbImage& img, const PipelineConfig& cfg) {
  const Quantization q = kmeans_quantize(img, cfg.quantize_k, cfg.seed, cfg.kmeans_max_iters);
  const HsvPlanes planes = split_channels(rgb_to_hsv(q.image));
  const int cols = cfg.clahe_grid.cols;
  const int rows = cfg.clahe_grid.rows;
  return merge_channels(clahe(planes.h, cfg.clahe_clip, cols, rows), clahe(planes.s, cfg.clahe_clip, cols, rows),
                        clahe(planes.v, cfg.clahe_clip, cols, rows));
}

}  // namespace lesionseg

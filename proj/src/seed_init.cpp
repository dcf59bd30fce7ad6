#include "lesionseg/seed_init.hpp"

#include <algorithm>
#include <cmath>

namespace lesionseg {

Trimap::Trimap(Image<TrimapLabel> labels) : labels_(std::move(labels)) {
  bool fg = false;
  bool bg = false;
  for (const TrimapLabel l : labels_.pixels()) {
    (is_foreground_side(l) ? fg : bg) = true;
    if (fg && bg) return;
  }
  throw Error(ErrorCode::kInvalidSeed,
              fg ? "trimap has no background-side pixel" : "trimap has no foreground-side pixel");
}

std::string_view init_mode_name(const InitMode& m) noexcept {
  return is_rect_init(m) ? "rect" : "mask";
}

BinaryMask majority_filter(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  BinaryMask out(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int ones = 0;
      int total = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (!mask.contains(x + dx, y + dy)) continue;
          ones += mask.at(x + dx, y + dy);
          ++total;
        }
      }
      out.at(x, y) = 2 * ones > total ? 1 : 0;
    }
  }
  return out;
}

BinaryMask extract_green_mask(const HsvImage& img, const PipelineConfig& cfg) {
  const HsvPlanes planes = split_channels(img);
  BinaryMask raw(img.width(), img.height(), 0);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const int r = planes.h[i];
    const int g = planes.s[i];
    const int b = planes.v[i];
    raw[i] = (g >= cfg.g_min && g > r && g > b) ? 1 : 0;
  }
  return majority_filter(raw);
}

double mask_confidence(const BinaryMask& mask) noexcept {
  if (mask.empty()) return 0.0;
  return static_cast<double>(count_ones(mask)) / static_cast<double>(mask.size());
}

Rect fallback_rect(int width, int height, double margin_h, double margin_w) {
  // The small epsilon keeps exact products such as 0.97 * 100 from flooring
  // to 96 through binary rounding.
  constexpr double kEps = 1e-9;
  const double h = height;
  const double w = width;
  Rect r;
  r.height = std::max(1, static_cast<int>(std::floor(h - margin_h * h + kEps)));
  r.width = std::max(1, static_cast<int>(std::floor(w - margin_w * w + kEps)));
  r.x0 = std::max(0, (width - r.width) / 2);
  r.y0 = std::max(0, (height - r.height) / 2);
  return r;
}

InitMode choose_init(const BinaryMask& mask, const PipelineConfig& cfg) {
  const double confidence = mask_confidence(mask);
  if (confidence >= cfg.tau_low && confidence <= cfg.tau_high) return MaskInit{mask};
  return RectInit{fallback_rect(mask.width(), mask.height(), cfg.rect_margin_h, cfg.rect_margin_w)};
}

Trimap build_trimap(const InitMode& init, int width, int height) {
  Image<TrimapLabel> labels(width, height, TrimapLabel::kSureBackground);
  if (const auto* m = std::get_if<MaskInit>(&init)) {
    if (m->mask.width() != width || m->mask.height() != height) {
      throw Error(ErrorCode::kDimensionMismatch, "build_trimap: mask size differs from image");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (m->mask[i]) labels[i] = TrimapLabel::kProbableForeground;
    }
  } else {
    const Rect& r = std::get<RectInit>(init).rect;
    if (r.x0 < 0 || r.y0 < 0 || r.x0 + r.width > width || r.y0 + r.height > height) {
      throw Error(ErrorCode::kDimensionMismatch, "build_trimap: rectangle outside image");
    }
    for (int y = r.y0; y < r.y0 + r.height; ++y) {
      for (int x = r.x0; x < r.x0 + r.width; ++x) labels.at(x, y) = TrimapLabel::kProbableForeground;
    }
  }
  return Trimap(std::move(labels));
}

}  // namespace lesionseg

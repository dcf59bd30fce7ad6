#pragma once

#include <cstdint>
#include <variant>

#include "lesionseg/config.hpp"
#include "lesionseg/raster.hpp"

namespace lesionseg {

struct Rect {
  int x0 = 0;
  int y0 = 0;
  int width = 1;
  int height = 1;

  bool contains(int x, int y) const noexcept { return x >= x0 && y >= y0 && x < x0 + width && y < y0 + height; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class TrimapLabel : std::uint8_t {
  kSureBackground = 0,
  kSureForeground = 1,
  kProbableBackground = 2,
  kProbableForeground = 3,
};

inline bool is_foreground_side(TrimapLabel l) noexcept {
  return l == TrimapLabel::kSureForeground || l == TrimapLabel::kProbableForeground;
}
inline bool is_sure(TrimapLabel l) noexcept {
  return l == TrimapLabel::kSureBackground || l == TrimapLabel::kSureForeground;
}

/// Seed labelling with at least one background-side and one foreground-side pixel.
class Trimap {
 public:
  /// Throws Error(kInvalidSeed) if either side is empty.
  explicit Trimap(Image<TrimapLabel> labels);

  int width() const noexcept { return labels_.width(); }
  int height() const noexcept { return labels_.height(); }
  std::size_t size() const noexcept { return labels_.size(); }
  TrimapLabel operator[](std::size_t i) const noexcept { return labels_[i]; }
  TrimapLabel at(int x, int y) const noexcept { return labels_.at(x, y); }
  const Image<TrimapLabel>& labels() const noexcept { return labels_; }

  template <typename P, typename T>
  bool same_size(const Image<P, T>& other) const noexcept {
    return labels_.same_size(other);
  }

 private:
  Image<TrimapLabel> labels_;
};

struct MaskInit {
  BinaryMask mask;
};
struct RectInit {
  Rect rect;
};
using InitMode = std::variant<MaskInit, RectInit>;

inline bool is_rect_init(const InitMode& m) noexcept { return std::holds_alternative<RectInit>(m); }
std::string_view init_mode_name(const InitMode& m) noexcept;

/// Reads the split H, S, V planes as R, G, B and keeps pixels whose middle
/// (S) plane is >= g_min and strictly above both others, followed by one
/// 3x3 majority pass.
BinaryMask extract_green_mask(const HsvImage& img, const PipelineConfig& cfg);

/// One pass of 3x3 majority voting; the window is clipped at the image edge
/// and a pixel is set when ones outnumber zeros in it.
BinaryMask majority_filter(const BinaryMask& mask);

double mask_confidence(const BinaryMask& mask) noexcept;

/// Rectangle whose height is height - margin_h*height and whose width is
/// width - margin_w*width, floored, at least 1, centred.
Rect fallback_rect(int width, int height, double margin_h = 0.03, double margin_w = 0.10);

InitMode choose_init(const BinaryMask& mask, const PipelineConfig& cfg);

/// Mask 1 / inside rect -> ProbableForeground, everything else SureBackground.
Trimap build_trimap(const InitMode& init, int width, int height);

}  // namespace lesionseg

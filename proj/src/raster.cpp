#include "lesionseg/raster.hpp"

#include <algorithm>
#include <cmath>

namespace lesionseg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kFullyMaskedImage: return "FullyMaskedImage";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kTileTooSmall: return "TileTooSmall";
    case ErrorCode::kInvalidSeed: return "InvalidSeed";
    case ErrorCode::kEmptyPixelSet: return "EmptyPixelSet";
    case ErrorCode::kDegenerateClass: return "DegenerateClass";
    case ErrorCode::kEmptyList: return "EmptyList";
    case ErrorCode::kNoImagesFound: return "NoImagesFound";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::uint8_t to_byte(double unit) noexcept {
  return static_cast<std::uint8_t>(std::clamp(std::lround(unit * 255.0), 0L, 255L));
}

}  // namespace

Hsv rgb_to_hsv(Rgb p) noexcept {
  const int hi = std::max({p.r, p.g, p.b});
  const int lo = std::min({p.r, p.g, p.b});
  const double delta = hi - lo;

  Hsv out;
  out.v = hi / 255.0;
  if (hi == 0 || delta == 0.0) {
    return out;  // achromatic: H = S = 0
  }
  out.s = delta / hi;

  double h;
  if (hi == p.r) {
    h = 60.0 * ((p.g - p.b) / delta);
  } else if (hi == p.g) {
    h = 60.0 * ((p.b - p.r) / delta + 2.0);
  } else {
    h = 60.0 * ((p.r - p.g) / delta + 4.0);
  }
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  out.h = h;
  return out;
}

Rgb hsv_to_rgb(Hsv p) noexcept {
  const double v = std::clamp(p.v, 0.0, 1.0);
  const double s = std::clamp(p.s, 0.0, 1.0);
  double h = std::fmod(p.h, 360.0);
  if (h < 0.0) h += 360.0;

  const double chroma = v * s;
  const double sector = h / 60.0;
  const double x = chroma * (1.0 - std::fabs(std::fmod(sector, 2.0) - 1.0));
  const double m = v - chroma;

  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(sector) % 6) {
    case 0: r = chroma; g = x; break;
    case 1: r = x; g = chroma; break;
    case 2: g = chroma; b = x; break;
    case 3: g = x; b = chroma; break;
    case 4: r = x; b = chroma; break;
    default: r = chroma; b = x; break;
  }
  return {to_byte(r + m), to_byte(g + m), to_byte(b + m)};
}

HsvImage rgb_to_hsv(const RgbImage& img) {
  HsvImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) out[i] = rgb_to_hsv(img[i]);
  return out;
}

RgbImage hsv_to_rgb(const HsvImage& img) {
  RgbImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) out[i] = hsv_to_rgb(img[i]);
  return out;
}

HsvPlanes split_channels(const HsvImage& img) {
  HsvPlanes planes{ChannelPlane(img.width(), img.height()), ChannelPlane(img.width(), img.height()),
                   ChannelPlane(img.width(), img.height())};
  for (std::size_t i = 0; i < img.size(); ++i) {
    planes.h[i] = to_byte(img[i].h / 360.0);
    planes.s[i] = to_byte(img[i].s);
    planes.v[i] = to_byte(img[i].v);
  }
  return planes;
}

HsvImage merge_channels(const ChannelPlane& h, const ChannelPlane& s, const ChannelPlane& v) {
  require_same_size(h, s, "merge_channels: H and S planes differ in size");
  require_same_size(h, v, "merge_channels: H and V planes differ in size");
  HsvImage out(h.width(), h.height());
  for (std::size_t i = 0; i < h.size(); ++i) {
    double hue = h[i] * 360.0 / 255.0;
    if (hue >= 360.0) hue -= 360.0;  // 255 wraps to 0 degrees
    out[i] = {hue, s[i] / 255.0, v[i] / 255.0};
  }
  return out;
}

RgbImage planes_as_rgb(const HsvPlanes& planes) {
  require_same_size(planes.h, planes.s, "planes_as_rgb: plane sizes differ");
  require_same_size(planes.h, planes.v, "planes_as_rgb: plane sizes differ");
  RgbImage out(planes.h.width(), planes.h.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {planes.h[i], planes.s[i], planes.v[i]};
  return out;
}

std::size_t count_ones(const BinaryMask& mask) noexcept {
  return static_cast<std::size_t>(std::count(mask.pixels().begin(), mask.pixels().end(), std::uint8_t{1}));
}

}  // namespace lesionseg

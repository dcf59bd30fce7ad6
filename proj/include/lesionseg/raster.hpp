#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "lesionseg/error.hpp"

namespace lesionseg {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

using Vec3 = std::array<double, 3>;

inline Vec3 to_vec3(Rgb p) noexcept { return {double(p.r), double(p.g), double(p.b)}; }

/// H in degrees [0,360), S and V as fractions in [0,1].
struct Hsv {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;

  friend bool operator==(const Hsv&, const Hsv&) = default;
};

/// Row-major raster. The Tag parameter keeps pixel-identical but
/// semantically different rasters (planes vs. masks) apart.
template <typename Pixel, typename Tag = void>
class Image {
 public:
  using pixel_type = Pixel;

  Image() = default;
  Image(int width, int height, Pixel fill = Pixel{}) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw Error(ErrorCode::kInvalidArgument, "image dimensions must be >= 1");
    }
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }
  Image(int width, int height, std::vector<Pixel> data) : Image(width, height) {
    if (data.size() != data_.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "pixel buffer size does not match dimensions");
    }
    data_ = std::move(data);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }
  bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  const Pixel& at(int x, int y) const noexcept { return data_[index(x, y)]; }
  Pixel& at(int x, int y) noexcept { return data_[index(x, y)]; }
  const Pixel& operator[](std::size_t i) const noexcept { return data_[i]; }
  Pixel& operator[](std::size_t i) noexcept { return data_[i]; }

  std::span<const Pixel> pixels() const noexcept { return data_; }
  std::span<Pixel> pixels() noexcept { return data_; }

  template <typename OtherPixel, typename OtherTag>
  bool same_size(const Image<OtherPixel, OtherTag>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Pixel> data_;
};

struct PlaneTag;
struct MaskTag;

using RgbImage = Image<Rgb>;
using HsvImage = Image<Hsv>;
/// 8-bit scalar plane.
using ChannelPlane = Image<std::uint8_t, PlaneTag>;
/// Values restricted to {0,1}.
using BinaryMask = Image<std::uint8_t, MaskTag>;

template <typename A, typename B>
void require_same_size(const A& a, const B& b, const char* what) {
  if (!a.same_size(b)) {
    throw Error(ErrorCode::kDimensionMismatch, what);
  }
}

Hsv rgb_to_hsv(Rgb p) noexcept;
Rgb hsv_to_rgb(Hsv p) noexcept;

HsvImage rgb_to_hsv(const RgbImage& img);
RgbImage hsv_to_rgb(const HsvImage& img);

struct HsvPlanes {
  ChannelPlane h;
  ChannelPlane s;
  ChannelPlane v;
};

/// H scaled by 255/360, S and V by 255, rounded to nearest.
HsvPlanes split_channels(const HsvImage& img);
HsvImage merge_channels(const ChannelPlane& h, const ChannelPlane& s, const ChannelPlane& v);

/// Reads the three planes as R, G, B respectively.
RgbImage planes_as_rgb(const HsvPlanes& planes);

std::size_t count_ones(const BinaryMask& mask) noexcept;

}  // namespace lesionseg

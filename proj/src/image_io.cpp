#include "lesionseg/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace lesionseg {

namespace {

cv::Mat read_or_throw(const std::filesystem::path& path, int flags) {
  cv::Mat mat;
  try {
    mat = cv::imread(path.string(), flags);
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::kIoError, "cannot decode " + path.string() + ": " + e.what());
  }
  if (mat.empty()) {
    throw Error(ErrorCode::kIoError, "cannot read image " + path.string());
  }
  if (mat.depth() != CV_8U) {
    throw Error(ErrorCode::kIoError, "only 8-bit images are supported: " + path.string());
  }
  return mat;
}

void write_or_throw(const std::filesystem::path& path, const cv::Mat& mat) {
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), mat);
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::kIoError, "cannot encode " + path.string() + ": " + e.what());
  }
  if (!ok) {
    throw Error(ErrorCode::kIoError, "cannot write image " + path.string());
  }
}

}  // namespace

RgbImage load_rgb(const std::filesystem::path& path) {
  // IMREAD_COLOR drops alpha and expands gray; OpenCV stores BGR.
  const cv::Mat mat = read_or_throw(path, cv::IMREAD_COLOR);
  RgbImage img(mat.cols, mat.rows);
  for (int y = 0; y < mat.rows; ++y) {
    const auto* row = mat.ptr<cv::Vec3b>(y);
    for (int x = 0; x < mat.cols; ++x) img.at(x, y) = {row[x][2], row[x][1], row[x][0]};
  }
  return img;
}

BinaryMask load_mask(const std::filesystem::path& path, int threshold) {
  const cv::Mat mat = read_or_throw(path, cv::IMREAD_GRAYSCALE);
  BinaryMask mask(mat.cols, mat.rows);
  for (int y = 0; y < mat.rows; ++y) {
    const auto* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < mat.cols; ++x) mask.at(x, y) = row[x] >= threshold ? 1 : 0;
  }
  return mask;
}

void save_rgb(const std::filesystem::path& path, const RgbImage& img) {
  cv::Mat mat(img.height(), img.width(), CV_8UC3);
  for (int y = 0; y < img.height(); ++y) {
    auto* row = mat.ptr<cv::Vec3b>(y);
    for (int x = 0; x < img.width(); ++x) {
      const Rgb p = img.at(x, y);
      row[x] = cv::Vec3b(p.b, p.g, p.r);
    }
  }
  write_or_throw(path, mat);
}

void save_mask(const std::filesystem::path& path, const BinaryMask& mask) {
  cv::Mat mat(mask.height(), mask.width(), CV_8UC1);
  for (int y = 0; y < mask.height(); ++y) {
    auto* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < mask.width(); ++x) row[x] = mask.at(x, y) ? 255 : 0;
  }
  write_or_throw(path, mat);
}

}  // namespace lesionseg

#include "lesionseg/dataset.hpp"

#include <algorithm>
#include <cctype>

#include "lesionseg/error.hpp"

namespace lesionseg {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kMaskSuffix = "_segmentation";

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_image_extension(const fs::path& p) {
  const std::string ext = lower(p.extension().string());
  return ext == ".jpg" || ext == ".jpeg" || ext == ".png";
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

void require_directory(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::kIoError, "not a directory: " + dir.string());
}

}  // namespace

Dataset load_dataset(const fs::path& images_dir, const fs::path& gt_dir) {
  require_directory(images_dir);
  require_directory(gt_dir);

  std::vector<std::pair<std::string, fs::path>> images;
  for (const auto& entry : fs::directory_iterator(images_dir)) {
    if (!entry.is_regular_file() || !is_image_extension(entry.path())) continue;
    const std::string id = entry.path().stem().string();
    if (ends_with(id, kMaskSuffix)) continue;
    images.emplace_back(id, entry.path());
  }
  if (images.empty()) throw Error(ErrorCode::kNoImagesFound, "no .jpg/.png images in " + images_dir.string());
  std::sort(images.begin(), images.end());

  Dataset dataset;
  for (const auto& [id, path] : images) {
    if (!dataset.entries.empty() && dataset.entries.back().image_id == id) continue;  // a.jpg + a.png
    const fs::path gt = gt_dir / (id + std::string(kMaskSuffix) + ".png");
    std::error_code ec;
    if (fs::is_regular_file(gt, ec)) {
      dataset.entries.push_back({id, path, gt});
    } else {
      dataset.skipped.push_back(id);
    }
  }
  return dataset;
}

Dataset first_n(Dataset dataset, int limit) {
  if (limit > 0 && static_cast<std::size_t>(limit) < dataset.entries.size()) {
    dataset.entries.resize(static_cast<std::size_t>(limit));
  }
  return dataset;
}

}  // namespace lesionseg

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lesionseg {

struct DatasetEntry {
  std::string image_id;
  std::filesystem::path image;
  std::filesystem::path ground_truth;
};

struct Dataset {
  std::vector<DatasetEntry> entries;  // sorted by image_id
  std::vector<std::string> skipped;   // images without a ground-truth mask
};

/// Pairs `<id>.jpg|.jpeg|.png` in images_dir with `<id>_segmentation.png` in
/// gt_dir (ISIC layout). Files already named `*_segmentation.*` in
/// images_dir are not treated as inputs. Throws kIoError for a missing
/// directory and kNoImagesFound when images_dir holds no images.
Dataset load_dataset(const std::filesystem::path& images_dir, const std::filesystem::path& gt_dir);

/// Keeps the first `limit` entries (by id). `limit` <= 0 keeps everything.
Dataset first_n(Dataset dataset, int limit);

}  // namespace lesionseg

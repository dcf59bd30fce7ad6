#include "lesionseg/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "lesionseg/image_io.hpp"
#include "lesionseg/pipeline.hpp"

namespace lesionseg {

namespace fs = std::filesystem;

std::string_view to_string(InitKind kind) noexcept {
  switch (kind) {
    case InitKind::kMask: return "mask";
    case InitKind::kRect: return "rect";
    case InitKind::kNone: return "none";
  }
  return "none";
}

namespace {

EvalRecord evaluate_entry(const DatasetEntry& entry, const PipelineConfig& base) {
  EvalRecord record;
  record.image_id = entry.image_id;
  const auto start = std::chrono::steady_clock::now();
  try {
    const RgbImage img = load_rgb(entry.image);
    const BinaryMask gt = load_mask(entry.ground_truth);
    PipelineConfig cfg = base;
    cfg.seed = image_seed(base.seed, entry.image_id);
    const SegmentationResult seg = run_pipeline(img, cfg);
    record.counts = confusion(seg.mask, gt);
    record.jaccard = jaccard(record.counts);
    record.init_mode = is_rect_init(seg.init_mode) ? InitKind::kRect : InitKind::kMask;
    record.iterations_run = seg.iterations_run;
  } catch (const std::exception& e) {
    record.error = e.what();
  }
  record.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return record;
}

void sort_by_id(std::vector<EvalRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const EvalRecord& a, const EvalRecord& b) { return a.image_id < b.image_id; });
}

}  // namespace

std::vector<EvalRecord> run_batch(const Dataset& dataset, const PipelineConfig& cfg, int worker_count) {
  cfg.validate();
  const std::size_t n = dataset.entries.size();
  std::vector<EvalRecord> records(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) records[i] = evaluate_entry(dataset.entries[i], cfg);
  };

  const std::size_t threads =
      std::min(static_cast<std::size_t>(std::max(worker_count, 1)), std::max<std::size_t>(n, 1));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();  // joins

  sort_by_id(records);
  return records;
}

std::vector<EvalRecord> run_eval(const fs::path& pred_dir, const fs::path& gt_dir) {
  std::error_code ec;
  if (!fs::is_directory(pred_dir, ec)) throw Error(ErrorCode::kIoError, "not a directory: " + pred_dir.string());
  if (!fs::is_directory(gt_dir, ec)) throw Error(ErrorCode::kIoError, "not a directory: " + gt_dir.string());

  constexpr std::string_view kSuffix = "_segmentation";
  std::vector<EvalRecord> records;
  for (const auto& entry : fs::directory_iterator(gt_dir)) {
    const fs::path& gt_path = entry.path();
    const std::string stem = gt_path.stem().string();
    if (!entry.is_regular_file() || gt_path.extension() != ".png" || stem.size() <= kSuffix.size() ||
        stem.compare(stem.size() - kSuffix.size(), kSuffix.size(), kSuffix) != 0) {
      continue;
    }
    EvalRecord record;
    record.image_id = stem.substr(0, stem.size() - kSuffix.size());
    const auto start = std::chrono::steady_clock::now();
    try {
      fs::path pred = pred_dir / (record.image_id + ".png");
      if (!fs::is_regular_file(pred, ec)) pred = pred_dir / (stem + ".png");
      if (!fs::is_regular_file(pred, ec)) {
        throw Error(ErrorCode::kIoError, "no prediction for " + record.image_id);
      }
      record.counts = confusion(load_mask(pred), load_mask(gt_path));
      record.jaccard = jaccard(record.counts);
    } catch (const std::exception& e) {
      record.error = e.what();
    }
    record.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    records.push_back(std::move(record));
  }
  if (records.empty()) throw Error(ErrorCode::kNoImagesFound, "no *_segmentation.png masks in " + gt_dir.string());
  sort_by_id(records);
  return records;
}

}  // namespace lesionseg

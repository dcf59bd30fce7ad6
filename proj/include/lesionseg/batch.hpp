#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lesionseg/config.hpp"
#include "lesionseg/dataset.hpp"
#include "lesionseg/metrics.hpp"

namespace lesionseg {

enum class InitKind { kMask, kRect, kNone };

std::string_view to_string(InitKind kind) noexcept;

/// One evaluated image, or the error that stopped it.
struct EvalRecord {
  std::string image_id;
  std::optional<std::string> error;
  double jaccard = 0.0;
  ConfusionCounts counts;
  InitKind init_mode = InitKind::kNone;
  int iterations_run = 0;
  double runtime_ms = 0.0;

  bool ok() const noexcept { return !error.has_value(); }
};

/// Runs the pipeline on every entry over `worker_count` threads. Each image
/// uses seed cfg.seed ^ stable_hash(image_id), so results do not depend on
/// scheduling. Failures become error records. Output is sorted by image_id.
std::vector<EvalRecord> run_batch(const Dataset& dataset, const PipelineConfig& cfg, int worker_count);

/// Scores externally produced masks: for every `<id>_segmentation.png` in
/// gt_dir, the prediction is `<id>.png` or `<id>_segmentation.png` in
/// pred_dir. A missing prediction yields an error record.
std::vector<EvalRecord> run_eval(const std::filesystem::path& pred_dir, const std::filesystem::path& gt_dir);

}  // namespace lesionseg

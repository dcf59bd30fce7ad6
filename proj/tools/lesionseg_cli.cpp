// lesionseg: automatic skin-lesion segmentation and Jaccard evaluation.
//
//   lesionseg segment --input img.jpg --out-mask mask.png [--out-overlay o.png]
//   lesionseg batch   --images DIR --ground-truth DIR --report out.csv [--workers N]
//   lesionseg eval    --pred DIR --ground-truth DIR --report out.csv
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 every image failed.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lesionseg/batch.hpp"
#include "lesionseg/config.hpp"
#include "lesionseg/dataset.hpp"
#include "lesionseg/image_io.hpp"
#include "lesionseg/overlay.hpp"
#include "lesionseg/pipeline.hpp"
#include "lesionseg/report.hpp"

namespace {

using namespace lesionseg;

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kAllFailed = 3 };

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
};

PipelineConfig resolve_config(const CommonOptions& opts) {
  PipelineConfig cfg;
  if (!opts.config_path.empty()) cfg = load_config(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  cfg.validate();
  return cfg;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvalidArgument: return kUsage;
    case ErrorCode::kIoError:
    case ErrorCode::kNoImagesFound: return kIo;
    default: return kAllFailed;
  }
}

int summarize_exit(const std::vector<EvalRecord>& records) {
  const ReportSummary s = summarize(records);
  std::cout << "images: " << s.images << "  evaluated: " << s.evaluated << "  failed: " << s.failed;
  if (s.mean) std::cout << "  mean JC: " << *s.mean;
  std::cout << '\n';
  return s.evaluated == 0 ? kAllFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automatic skin-lesion segmentation with GrabCut in HSV space"};
  app.require_subcommand(1);

  CommonOptions segment_opts;
  std::string input, out_mask, out_overlay;
  auto* segment = app.add_subcommand("segment", "Segment a single image");
  segment->add_option("--input", input, "Input image (PNG or JPEG)")->required();
  segment->add_option("--out-mask", out_mask, "Output mask PNG (0/255)")->required();
  segment->add_option("--out-overlay", out_overlay, "Optional boundary overlay image");
  segment->add_option("--config", segment_opts.config_path, "JSON pipeline configuration");
  segment->add_option("--seed", segment_opts.seed, "Random seed (overrides config)");

  CommonOptions batch_opts;
  std::string images_dir, gt_dir, report;
  int workers = 1;
  int limit = 0;
  bool no_timing = false;
  auto* batch = app.add_subcommand("batch", "Segment and evaluate an ISIC-layout dataset");
  batch->add_option("--images", images_dir, "Directory of <id>.jpg|.png images")->required();
  batch->add_option("--ground-truth", gt_dir, "Directory of <id>_segmentation.png masks")->required();
  batch->add_option("--report", report, "CSV report path; summary goes next to it")->required();
  batch->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  batch->add_option("--limit", limit, "Only the first N images by id (0 = all)")->check(CLI::NonNegativeNumber);
  batch->add_flag("--no-timing", no_timing, "Leave runtime_ms empty for reproducible reports");
  batch->add_option("--config", batch_opts.config_path, "JSON pipeline configuration");
  batch->add_option("--seed", batch_opts.seed, "Base random seed (overrides config)");

  std::string pred_dir, eval_gt_dir, eval_report;
  auto* eval = app.add_subcommand("eval", "Score existing masks against ground truth");
  eval->add_option("--pred", pred_dir, "Directory of predicted masks")->required();
  eval->add_option("--ground-truth", eval_gt_dir, "Directory of <id>_segmentation.png masks")->required();
  eval->add_option("--report", eval_report, "CSV report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*segment) {
      const PipelineConfig cfg = resolve_config(segment_opts);
      const RgbImage img = load_rgb(input);
      SegmentationResult result;
      try {
        result = run_pipeline(img, cfg);
      } catch (const Error& e) {
        std::cerr << "segmentation failed: " << e.what() << '\n';
        return kAllFailed;
      }
      save_mask(out_mask, result.mask);
      if (!out_overlay.empty()) save_rgb(out_overlay, render_overlay(img, result.mask));
      std::cout << "init: " << init_mode_name(result.init_mode) << "  iterations: " << result.iterations_run
                << "  lesion fraction: " << static_cast<double>(count_ones(result.mask)) / result.mask.size()
                << '\n';
      return kOk;
    }

    if (*batch) {
      const PipelineConfig cfg = resolve_config(batch_opts);
      Dataset dataset = load_dataset(images_dir, gt_dir);
      ReportOptions options;
      options.include_timing = !no_timing;
      options.selection.available = dataset.entries.size();
      if (limit > 0) {
        options.selection.mode = "first_n";
        options.selection.limit = limit;
        dataset = first_n(std::move(dataset), limit);
      }
      if (!dataset.skipped.empty()) {
        std::cerr << dataset.skipped.size() << " image(s) without ground truth skipped\n";
      }
      if (dataset.entries.empty()) {
        std::cerr << "no image/ground-truth pairs found\n";
        return kIo;
      }
      const auto records = run_batch(dataset, cfg, workers);
      write_report(records, report, options);
      return summarize_exit(records);
    }

    if (*eval) {
      const auto records = run_eval(pred_dir, eval_gt_dir);
      write_report(records, eval_report);
      return summarize_exit(records);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace lesionseg {

/// Which image the GrabCut colour models are fitted on.
enum class ModelSpace { kEnhanced, kRaw };

/// Data term used for the terminal capacities.
enum class DataTerm {
  kMixture,            // -log sum_k w_k N_k
  kAssignedComponent,  // min_k -log(w_k N_k)
};

struct ClaheGrid {
  int cols = 8;
  int rows = 8;

  friend bool operator==(const ClaheGrid&, const ClaheGrid&) = default;
};

struct PipelineConfig {
  int dark_threshold = 30;
  int quantize_k = 8;
  int kmeans_max_iters = 20;
  double clahe_clip = 2.0;
  ClaheGrid clahe_grid{};
  int g_min = 100;
  double tau_low = 0.02;
  double tau_high = 0.90;
  double rect_margin_h = 0.03;
  double rect_margin_w = 0.10;
  int gmm_K = 5;
  double gamma = 50.0;
  int grabcut_iterations = 5;
  std::uint64_t seed = 0;
  ModelSpace model_space = ModelSpace::kEnhanced;
  DataTerm data_term = DataTerm::kMixture;

  /// Throws Error(kInvalidArgument) naming the first violated constraint.
  void validate() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Parses a JSON object whose keys are PipelineConfig field names. Missing
/// keys keep the values already in `base`; unknown keys are rejected.
PipelineConfig config_from_json(const std::string& text, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});
std::string config_to_json(const PipelineConfig& cfg);

std::string_view to_string(ModelSpace space);
std::string_view to_string(DataTerm term);

}  // namespace lesionseg

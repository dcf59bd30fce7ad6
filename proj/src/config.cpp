#include "lesionseg/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lesionseg/error.hpp"

namespace lesionseg {

namespace {

using nlohmann::json;

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, std::string("config: ") + what);
}

template <typename T>
void read_field(const json& j, const char* key, T& field) {
  try {
    field = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

std::string_view to_string(ModelSpace space) {
  return space == ModelSpace::kEnhanced ? "enhanced" : "raw";
}

std::string_view to_string(DataTerm term) {
  return term == DataTerm::kMixture ? "mixture" : "assigned";
}

void PipelineConfig::validate() const {
  require(dark_threshold >= 0 && dark_threshold <= 255, "dark_threshold must be in [0,255]");
  require(quantize_k >= 1 && quantize_k <= 256, "quantize_k must be in [1,256]");
  require(kmeans_max_iters >= 1, "kmeans_max_iters must be >= 1");
  require(clahe_clip >= 1.0, "clahe_clip must be >= 1");
  require(clahe_grid.cols >= 1 && clahe_grid.rows >= 1, "clahe_grid entries must be >= 1");
  require(g_min >= 0 && g_min <= 255, "g_min must be in [0,255]");
  require(tau_low >= 0.0 && tau_high <= 1.0 && tau_low < tau_high, "need 0 <= tau_low < tau_high <= 1");
  require(rect_margin_h > 0.0 && rect_margin_h < 1.0, "rect_margin_h must be in (0,1)");
  require(rect_margin_w > 0.0 && rect_margin_w < 1.0, "rect_margin_w must be in (0,1)");
  require(gmm_K >= 1, "gmm_K must be >= 1");
  require(gamma > 0.0, "gamma must be > 0");
  require(grabcut_iterations >= 1, "grabcut_iterations must be >= 1");
}

PipelineConfig config_from_json(const std::string& text, PipelineConfig cfg) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), "top level must be a JSON object");

  for (const auto& [key, value] : j.items()) {
    if (key == "dark_threshold") read_field(j, "dark_threshold", cfg.dark_threshold);
    else if (key == "quantize_k") read_field(j, "quantize_k", cfg.quantize_k);
    else if (key == "kmeans_max_iters") read_field(j, "kmeans_max_iters", cfg.kmeans_max_iters);
    else if (key == "clahe_clip") read_field(j, "clahe_clip", cfg.clahe_clip);
    else if (key == "clahe_grid") {
      require(value.is_array() && value.size() == 2 && value[0].is_number_integer() &&
                  value[1].is_number_integer(),
              "clahe_grid must be [cols, rows]");
      cfg.clahe_grid = {value[0].get<int>(), value[1].get<int>()};
    } else if (key == "g_min") read_field(j, "g_min", cfg.g_min);
    else if (key == "tau_low") read_field(j, "tau_low", cfg.tau_low);
    else if (key == "tau_high") read_field(j, "tau_high", cfg.tau_high);
    else if (key == "rect_margin_h") read_field(j, "rect_margin_h", cfg.rect_margin_h);
    else if (key == "rect_margin_w") read_field(j, "rect_margin_w", cfg.rect_margin_w);
    else if (key == "gmm_K") read_field(j, "gmm_K", cfg.gmm_K);
    else if (key == "gamma") read_field(j, "gamma", cfg.gamma);
    else if (key == "grabcut_iterations") read_field(j, "grabcut_iterations", cfg.grabcut_iterations);
    else if (key == "seed") read_field(j, "seed", cfg.seed);
    else if (key == "model_space") {
      const std::string s = value.is_string() ? value.get<std::string>() : "";
      require(s == "enhanced" || s == "raw", "model_space must be \"enhanced\" or \"raw\"");
      cfg.model_space = s == "enhanced" ? ModelSpace::kEnhanced : ModelSpace::kRaw;
    } else if (key == "data_term") {
      const std::string s = value.is_string() ? value.get<std::string>() : "";
      require(s == "mixture" || s == "assigned", "data_term must be \"mixture\" or \"assigned\"");
      cfg.data_term = s == "mixture" ? DataTerm::kMixture : DataTerm::kAssignedComponent;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "config: unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open config " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str(), base);
}

std::string config_to_json(const PipelineConfig& cfg) {
  json j = {
      {"dark_threshold", cfg.dark_threshold},
      {"quantize_k", cfg.quantize_k},
      {"kmeans_max_iters", cfg.kmeans_max_iters},
      {"clahe_clip", cfg.clahe_clip},
      {"clahe_grid", {cfg.clahe_grid.cols, cfg.clahe_grid.rows}},
      {"g_min", cfg.g_min},
      {"tau_low", cfg.tau_low},
      {"tau_high", cfg.tau_high},
      {"rect_margin_h", cfg.rect_margin_h},
      {"rect_margin_w", cfg.rect_margin_w},
      {"gmm_K", cfg.gmm_K},
      {"gamma", cfg.gamma},
      {"grabcut_iterations", cfg.grabcut_iterations},
      {"seed", cfg.seed},
      {"model_space", to_string(cfg.model_space)},
      {"data_term", to_string(cfg.data_term)},
  };
  return j.dump(2);
}

}  // namespace lesionseg

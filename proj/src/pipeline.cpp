#include "lesionseg/pipeline.hpp"

#include <utility>

#include "lesionseg/enhance.hpp"
#include "lesionseg/grabcut.hpp"
#include "lesionseg/preprocess.hpp"

namespace lesionseg {

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + " stage: " + e.what());
  }
}

}  // namespace

std::uint64_t stable_hash(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

SegmentationResult run_pipeline(const RgbImage& img, const PipelineConfig& cfg) {
  cfg.validate();
  const int w = img.width();
  const int h = img.height();

  const RgbImage cleaned = stage("preprocess", [&] { return remove_border(img, cfg.dark_threshold); });
  const HsvImage enhanced = stage("enhance", [&] { return enhance(cleaned, cfg); });
  const BinaryMask green = stage("seed", [&] { return extract_green_mask(enhanced, cfg); });
  InitMode init = choose_init(green, cfg);
  const Trimap trimap = stage("seed", [&] { return build_trimap(init, w, h); });

  const RgbImage model_input =
      cfg.model_space == ModelSpace::kEnhanced ? planes_as_rgb(split_channels(enhanced)) : cleaned;
  GrabCutResult cut = stage("grabcut", [&] { return grabcut(model_input, trimap, cfg, cfg.seed); });

  SegmentationResult result;
  result.mask = std::move(cut.mask);
  result.energy_trace = std::move(cut.energy_trace);
  result.iterations_run = cut.iterations_run;
  result.init_mode = std::move(init);
  return result;
}

}  // namespace lesionseg

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lesionseg/batch.hpp"
#include "lesionseg/config.hpp"
#include "lesionseg/dataset.hpp"
#include "lesionseg/image_io.hpp"
#include "lesionseg/overlay.hpp"
#include "lesionseg/pipeline.hpp"
#include "lesionseg/report.hpp"
#include "support/fixtures.hpp"
#include "support/temp_dir.hpp"

using namespace lesionseg;
using lesionseg::testing::LesionParams;
using lesionseg::testing::make_lesion_fixture;
using lesionseg::testing::TempDir;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double jc(const BinaryMask& a, const BinaryMask& b) { return jaccard(confusion(a, b)); }

void write_pair(const TempDir& images, const TempDir& gt, const std::string& id, std::uint64_t seed) {
  const auto f = make_lesion_fixture(seed, {.size = 64, .noise_sigma = 8.0, .frame = 0});
  save_rgb(images / (id + ".png"), f.image);
  save_mask(gt / (id + "_segmentation.png"), f.truth);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + LESIONSEG_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("config json") {
  SUBCASE("defaults round-trip") { CHECK(config_from_json(config_to_json(PipelineConfig{})) == PipelineConfig{}); }
  SUBCASE("partial override keeps other values") {
    const PipelineConfig c = config_from_json(R"({"gamma": 25, "clahe_grid": [4, 2], "data_term": "assigned"})");
    CHECK(c.gamma == 25.0);
    CHECK(c.clahe_grid == ClaheGrid{4, 2});
    CHECK(c.data_term == DataTerm::kAssignedComponent);
    CHECK(c.gmm_K == 5);
  }
  SUBCASE("unknown keys and bad values are rejected") {
    CHECK_THROWS_AS(config_from_json(R"({"gama": 25})"), Error);
    CHECK_THROWS_AS(config_from_json(R"({"quantize_k": 0})"), Error);
    CHECK_THROWS_AS(config_from_json(R"({"tau_low": 0.5, "tau_high": 0.4})"), Error);
    CHECK_THROWS_AS(config_from_json("[1, 2]"), Error);
    CHECK_THROWS_AS(config_from_json("{"), Error);
  }
}

TEST_CASE("image io round trip") {
  TempDir dir;
  const auto f = make_lesion_fixture(1, {.size = 16, .noise_sigma = 5.0, .frame = 0});
  save_rgb(dir / "a.png", f.image);
  save_mask(dir / "m.png", f.truth);
  CHECK(load_rgb(dir / "a.png") == f.image);
  CHECK(load_mask(dir / "m.png") == f.truth);
  CHECK_THROWS_AS(load_rgb(dir / "missing.png"), Error);
}

TEST_CASE("dataset discovery") {
  TempDir images("img");
  TempDir gt("gt");
  write_pair(images, gt, "ISIC_0000002", 2);
  write_pair(images, gt, "ISIC_0000001", 1);
  save_rgb(images / "ISIC_0000003.png", RgbImage(4, 4));
  save_mask(images / "ISIC_0000001_segmentation.png", BinaryMask(4, 4));
  std::ofstream(images / "notes.txt") << "x";

  const Dataset d = load_dataset(images.path(), gt.path());
  REQUIRE(d.entries.size() == 2);
  CHECK(d.entries[0].image_id == "ISIC_0000001");
  CHECK(d.entries[1].image_id == "ISIC_0000002");
  REQUIRE(d.skipped.size() == 1);
  CHECK(d.skipped[0] == "ISIC_0000003");
  CHECK(first_n(d, 1).entries.size() == 1);
  CHECK(first_n(d, 0).entries.size() == 2);

  TempDir empty("empty");
  try {
    load_dataset(empty.path(), gt.path());
    FAIL("expected NoImagesFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoImagesFound);
  }
  CHECK_THROWS_AS(load_dataset(images / "nope", gt.path()), Error);
}

TEST_CASE("batch results do not depend on worker count") {
  TempDir images("img");
  TempDir gt("gt");
  for (int i = 0; i < 4; ++i) write_pair(images, gt, "case_" + std::to_string(i), static_cast<std::uint64_t>(10 + i));
  const Dataset d = load_dataset(images.path(), gt.path());
  PipelineConfig cfg;
  const auto one = run_batch(d, cfg, 1);
  const auto four = run_batch(d, cfg, 4);
  REQUIRE(one.size() == 4);
  REQUIRE(four.size() == 4);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].image_id == four[i].image_id);
    CHECK(one[i].ok());
    CHECK(one[i].counts == four[i].counts);
    CHECK(one[i].init_mode == four[i].init_mode);
    CHECK(one[i].iterations_run == four[i].iterations_run);
  }
}

TEST_CASE("report files") {
  TempDir dir;
  std::vector<EvalRecord> records(3);
  records[0].image_id = "b";
  records[0].counts = {2, 2, 2, 10};
  records[0].jaccard = 1.0 / 3;
  records[0].init_mode = InitKind::kRect;
  records[0].iterations_run = 3;
  records[1].image_id = "a";
  records[1].counts = {7, 1, 0, 5};
  records[1].jaccard = 7.0 / 8;
  records[1].init_mode = InitKind::kMask;
  records[1].iterations_run = 2;
  records[2].image_id = "c";
  records[2].error = "pipeline: boom";

  const fs::path csv = dir / "report.csv";
  write_report(records, csv, {.include_timing = false, .selection = {}});
  const std::string text = slurp(csv);
  CHECK(text.rfind(std::string(kReportHeader) + "\n", 0) == 0);
  CHECK(text.find("b,0.3333,2,2,2,10,rect,3,\n") != std::string::npos);
  CHECK(text.find("c,,,,,,error,,\n") != std::string::npos);

  const auto back = read_report(csv);
  REQUIRE(back.size() == 3);
  CHECK_FALSE(back[2].ok());
  const ReportSummary s = summarize(records);
  const ReportSummary t = summarize(back);
  CHECK(s.evaluated == 2);
  CHECK(s.failed == 1);
  REQUIRE(s.mean.has_value());
  CHECK(*s.mean == *t.mean);
  CHECK(*s.mean == doctest::Approx((1.0 / 3 + 7.0 / 8) / 2));
  CHECK(s.init_mode_counts.at("rect") == 1);

  const auto summary = nlohmann::json::parse(slurp(summary_path(csv)));
  CHECK(summary["evaluated"] == 2);
  CHECK(summary["failed"] == 1);
  CHECK(summary_path(csv).filename() == "report.summary.json");
  CHECK_THROWS_AS(write_report({}, dir / "x.csv"), Error);
}

TEST_CASE("overlay") {
  const RgbImage img(6, 5, Rgb{10, 20, 30});
  SUBCASE("empty mask leaves the image unchanged") { CHECK(render_overlay(img, BinaryMask(6, 5, 0)) == img); }
  SUBCASE("full mask outlines the image border") {
    const RgbImage out = render_overlay(img, BinaryMask(6, 5, 1));
    for (int y = 0; y < 5; ++y) {
      for (int x = 0; x < 6; ++x) {
        const bool edge = x == 0 || y == 0 || x == 5 || y == 4;
        CHECK(out.at(x, y) == (edge ? Rgb{0, 255, 0} : Rgb{10, 20, 30}));
      }
    }
  }
  SUBCASE("boundary equals mask minus its 3x3 erosion") {
    const auto f = make_lesion_fixture(3, {.size = 40, .noise_sigma = 0.0, .frame = 0});
    const BinaryMask b = mask_boundary(f.truth);
    for (int y = 0; y < 40; ++y) {
      for (int x = 0; x < 40; ++x) {
        bool eroded = f.truth.at(x, y) != 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (!f.truth.contains(x + dx, y + dy) || !f.truth.at(x + dx, y + dy)) eroded = false;
          }
        }
        CHECK(b.at(x, y) == ((f.truth.at(x, y) && !eroded) ? 1 : 0));
      }
    }
  }
}

TEST_CASE("pipeline on synthetic lesions") {
  PipelineConfig cfg;
  SUBCASE("framed fixture") {
    const auto f = make_lesion_fixture(7, {.size = 128, .noise_sigma = 10.0, .frame = 6});
    const SegmentationResult r = run_pipeline(f.image, cfg);
    CHECK(jc(r.mask, f.truth) >= 0.9);
    const SegmentationResult again = run_pipeline(f.image, cfg);
    CHECK(again.mask == r.mask);
  }
  SUBCASE("flat image does not crash") {
    const SegmentationResult r = run_pipeline(RgbImage(64, 48, Rgb{200, 160, 140}), cfg);
    CHECK(std::holds_alternative<RectInit>(r.init_mode));
    CHECK(r.mask.width() == 64);
  }
  SUBCASE("rectangle fallback") {
    cfg.tau_low = 0.5;
    const auto f = make_lesion_fixture(9, {.size = 96, .noise_sigma = 10.0, .frame = 0});
    const SegmentationResult r = run_pipeline(f.image, cfg);
    CHECK(std::holds_alternative<RectInit>(r.init_mode));
    CHECK(jc(r.mask, f.truth) >= 0.8);
  }
  SUBCASE("raw model space") {
    cfg.model_space = ModelSpace::kRaw;
    const auto f = make_lesion_fixture(8, {.size = 96, .noise_sigma = 10.0, .frame = 0});
    CHECK(jc(run_pipeline(f.image, cfg).mask, f.truth) >= 0.8);
  }
}

TEST_CASE("command line exit codes") {
  TempDir images("img");
  TempDir gt("gt");
  TempDir out("out");
  write_pair(images, gt, "one", 31);
  const std::string img = (images / "one.png").string();

  CHECK(run_cli("") == 1);
  CHECK(run_cli("segment --input \"" + img + "\"") == 1);
  CHECK(run_cli("segment --input \"" + img + "\" --out-mask \"" + (out / "m.png").string() + "\"") == 0);
  CHECK(fs::exists(out / "m.png"));
  CHECK(run_cli("segment --input \"" + (images / "missing.png").string() + "\" --out-mask \"" +
                (out / "n.png").string() + "\"") == 2);
  CHECK(run_cli("batch --images \"" + images.path().string() + "\" --ground-truth \"" + gt.path().string() +
                "\" --report \"" + (out / "r.csv").string() + "\"") == 0);
  CHECK(fs::exists(out / "r.summary.json"));
  TempDir empty("empty");
  CHECK(run_cli("batch --images \"" + empty.path().string() + "\" --ground-truth \"" + gt.path().string() +
                "\" --report \"" + (out / "e.csv").string() + "\"") == 2);
  CHECK(run_cli("eval --pred \"" + gt.path().string() + "\" --ground-truth \"" + gt.path().string() +
                "\" --report \"" + (out / "v.csv").string() + "\"") == 0);
}

TEST_SUITE_END();

#include "lesionseg/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lesionseg {

namespace fs = std::filesystem;

namespace {

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

ReportSummary summarize(std::span<const EvalRecord> records) {
  ReportSummary s;
  s.images = records.size();
  std::vector<double> values;
  for (const EvalRecord& r : records) {
    if (!r.ok()) {
      ++s.failed;
      continue;
    }
    ++s.evaluated;
    values.push_back(jaccard(r.counts));
    ++s.init_mode_counts[std::string(to_string(r.init_mode))];
  }
  if (values.empty()) return s;

  s.mean = mean_jaccard(values);
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  s.min = values.front();
  s.max = values.back();
  return s;
}

fs::path summary_path(const fs::path& csv_path) {
  fs::path p = csv_path;
  p.replace_extension(".summary.json");
  return p;
}

void write_report(std::span<const EvalRecord> records, const fs::path& csv_path, const ReportOptions& options) {
  if (records.empty()) throw Error(ErrorCode::kEmptyList, "write_report: no records");

  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw Error(ErrorCode::kIoError, "cannot write " + csv_path.string());
  csv << kReportHeader << '\n';
  for (const EvalRecord& r : records) {
    csv << r.image_id << ',';
    if (r.ok()) {
      csv << format_fixed(r.jaccard, 4) << ',' << r.counts.tp << ',' << r.counts.fp << ',' << r.counts.fn << ','
          << r.counts.tn << ',' << to_string(r.init_mode) << ',' << r.iterations_run << ',';
    } else {
      csv << ",,,,,error,,";
    }
    if (options.include_timing) csv << format_fixed(r.runtime_ms, 3);
    csv << '\n';
  }
  csv.close();
  if (!csv) throw Error(ErrorCode::kIoError, "failed writing " + csv_path.string());

  const ReportSummary s = summarize(records);
  nlohmann::json j;
  j["images"] = s.images;
  j["evaluated"] = s.evaluated;
  j["failed"] = s.failed;
  j["jaccard"] = {{"mean", optional_json(s.mean)},
                  {"median", optional_json(s.median)},
                  {"min", optional_json(s.min)},
                  {"max", optional_json(s.max)}};
  j["init_mode_counts"] = s.init_mode_counts;
  j["selection"] = {{"mode", options.selection.mode},
                    {"limit", options.selection.limit},
                    {"available", options.selection.available}};
  nlohmann::json failures = nlohmann::json::array();
  for (const EvalRecord& r : records) {
    if (!r.ok()) failures.push_back({{"image_id", r.image_id}, {"error", *r.error}});
  }
  j["failures"] = failures;

  const fs::path json_path = summary_path(csv_path);
  std::ofstream out(json_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + json_path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + json_path.string());
}

std::vector<EvalRecord> read_report(const fs::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + csv_path.string());
  std::string line;
  if (!std::getline(in, line) || line != kReportHeader) {
    throw Error(ErrorCode::kIoError, "unexpected report header in " + csv_path.string());
  }
  std::vector<EvalRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw Error(ErrorCode::kIoError, "malformed report row: " + line);
    EvalRecord r;
    r.image_id = f[0];
    try {
      if (f[6] == "error") {
        r.error = "error";
      } else {
        r.jaccard = std::stod(f[1]);
        r.counts = {std::stoull(f[2]), std::stoull(f[3]), std::stoull(f[4]), std::stoull(f[5])};
        r.init_mode = f[6] == "mask" ? InitKind::kMask : f[6] == "rect" ? InitKind::kRect : InitKind::kNone;
        r.iterations_run = std::stoi(f[7]);
      }
      if (!f[8].empty()) r.runtime_ms = std::stod(f[8]);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kIoError, "malformed report row: " + line);
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace lesionseg

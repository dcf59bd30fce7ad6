#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lesionseg/batch.hpp"

namespace lesionseg {

inline constexpr std::string_view kReportHeader = "image_id,jaccard,tp,fp,fn,tn,init_mode,iterations,runtime_ms";

/// How the evaluated images were chosen; recorded in the summary.
struct Selection {
  std::string mode = "all";  // "all" or "first_n"
  int limit = 0;
  std::size_t available = 0;
};

struct ReportOptions {
  /// When false the runtime_ms column is left empty so that reports from
  /// different runs can be compared byte for byte.
  bool include_timing = true;
  Selection selection;
};

struct ReportSummary {
  std::size_t images = 0;
  std::size_t evaluated = 0;
  std::size_t failed = 0;
  std::optional<double> mean;
  std::optional<double> median;
  std::optional<double> min;
  std::optional<double> max;
  std::map<std::string, std::size_t> init_mode_counts;
};

/// Statistics over successful records. Each Jaccard value is recomputed
/// from the record's counts, so a re-parsed CSV reproduces them exactly.
ReportSummary summarize(std::span<const EvalRecord> records);

/// `report.csv` -> `report.summary.json`
std::filesystem::path summary_path(const std::filesystem::path& csv_path);

/// Writes the CSV (header plus one row per record, Jaccard with four
/// decimals) and the sibling summary JSON. Error records have empty metric
/// fields and init_mode "error"; their messages go to the summary.
void write_report(std::span<const EvalRecord> records, const std::filesystem::path& csv_path,
                  const ReportOptions& options = {});

/// Parses a CSV written by write_report. Error rows come back with error set.
std::vector<EvalRecord> read_report(const std::filesystem::path& csv_path);

}  // namespace lesionseg

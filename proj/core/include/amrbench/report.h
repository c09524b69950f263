// Copyright 2026 The amrbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Evaluation report files. A report directory holds:
//
//   report.json        records, per-depth aggregates, summary, subsets
//   f1.csv ...         one CSV per metric: depth,<run label>
//   f1.svg ...         one line chart per metric, one series per run
//   run_metadata.json  generation time and tool version
//
// Everything except run_metadata.json is a pure function of the run inputs.
// Charts and CSVs are rendered from report.json alone.

#ifndef AMRBENCH_REPORT_H_
#define AMRBENCH_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "amrbench/evaluator.h"

namespace amrbench::report {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kReportFile = "report.json";
inline constexpr const char* kMetadataFile = "run_metadata.json";

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunInfo {
  std::string label = "run";
  std::uint64_t seed = 0;
  int restarts = 4;
  int exact_threshold = 8;
  std::string family;
  std::string ci_mode = "per-depth";
  std::string invalid_handling = "exclude";
  std::string gold;
  std::string predictions;
};

struct Report {
  RunInfo run;
  std::vector<evaluator::EvalRecord> records;
  std::vector<evaluator::DepthAggregate> aggregates;
  std::vector<evaluator::SummaryRow> summary;
  std::vector<evaluator::SubsetSummary> subsets;
};

nlohmann::ordered_json ToJson(const Report& report);

// Per-depth metric values of one run, as read back from report.json.
struct Series {
  std::string label;
  std::map<int, double> f1, precision, recall, errors;
};

Series SeriesFromJson(const nlohmann::json& report_json);
Series ReadSeries(const std::filesystem::path& report_file);

enum class Metric { kF1, kPrecision, kRecall, kErrors };
inline constexpr Metric kAllMetrics[] = {Metric::kF1, Metric::kPrecision, Metric::kRecall, Metric::kErrors};

// File stem: "f1", "precision", "recall", "errors".
std::string_view MetricStem(Metric metric);

// "depth,<label>..." then one row per depth present in any series; cells
// missing from a series are left empty.
std::string RenderCsv(const std::vector<Series>& series, Metric metric);

// Standalone SVG line chart, one polyline per series.
std::string RenderChart(const std::vector<Series>& series, Metric metric);

// Writes CSVs and charts for `series` into `dir`.
void WritePlots(const std::vector<Series>& series, const std::filesystem::path& dir);

// Writes the whole report directory. Throws ReportError for an empty record
// list and on I/O failure (with the offending path).
void EmitReport(const Report& report, const std::filesystem::path& dir);

// Overlays several report.json files into combined CSVs and charts.
void CompareReports(const std::vector<std::filesystem::path>& report_files, const std::filesystem::path& dir);

}  // namespace amrbench::report

#endif  // AMRBENCH_REPORT_H_

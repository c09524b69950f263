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

#include "amrbench/report.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>

#include <fmt/chrono.h>
#include <fmt/format.h>

#ifndef AMRBENCH_VERSION
#define AMRBENCH_VERSION "0.0.0"
#endif

namespace amrbench::report {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

ordered_json RowsToJson(const std::vector<evaluator::SummaryRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json r;
    r["metric"] = row.metric;
    r["mean"] = row.mean;
    r["ci_half_width"] = row.ci_half_width ? ordered_json(*row.ci_half_width) : ordered_json(nullptr);
    out.push_back(std::move(r));
  }
  return out;
}

ordered_json AggregatesToJson(const std::vector<evaluator::DepthAggregate>& aggregates) {
  ordered_json out = ordered_json::array();
  for (const auto& a : aggregates) {
    ordered_json j;
    j["depth"] = a.depth;
    j["n"] = a.n;
    j["error_count"] = a.error_count;
    j["scored"] = a.scored;
    j["mean_f1"] = a.mean_f1;
    j["mean_precision"] = a.mean_precision;
    j["mean_recall"] = a.mean_recall;
    out.push_back(std::move(j));
  }
  return out;
}

ordered_json RecordToJson(const evaluator::EvalRecord& record) {
  ordered_json j;
  j["id"] = record.entry_id;
  j["depth"] = record.depth;
  j["subset"] = record.subset;
  j["raw_length"] = record.raw_length;
  j["valid"] = record.structural.valid();
  ordered_json errors = ordered_json::array();
  for (const auto& e : record.structural.errors) {
    errors.push_back({{"kind", penman::ErrorKindName(e.kind)}, {"offset", e.offset}, {"message", e.message}});
  }
  j["errors"] = std::move(errors);
  if (record.score) {
    const auto& s = *record.score;
    j["matched"] = s.matched;
    j["predicted_triples"] = s.predicted_total;
    j["gold_triples"] = s.gold_total;
    j["precision"] = s.precision;
    j["recall"] = s.recall;
    j["f1"] = s.f1;
    j["exact"] = s.exact;
    j["restarts_used"] = s.restarts_used;
  }
  return j;
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportError("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw ReportError("write failed for " + path.string());
}

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const std::map<int, double>& Values(const Series& s, Metric metric) {
  switch (metric) {
    case Metric::kF1: return s.f1;
    case Metric::kPrecision: return s.precision;
    case Metric::kRecall: return s.recall;
    case Metric::kErrors: return s.errors;
  }
  return s.f1;
}

std::string_view MetricTitle(Metric metric) {
  switch (metric) {
    case Metric::kF1: return "F1 by depth";
    case Metric::kPrecision: return "Precision by depth";
    case Metric::kRecall: return "Recall by depth";
    case Metric::kErrors: return "Structural errors by depth";
  }
  return "";
}

}  // namespace

ordered_json ToJson(const Report& report) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  ordered_json run;
  run["label"] = report.run.label;
  run["seed"] = report.run.seed;
  run["restarts"] = report.run.restarts;
  run["exact_threshold"] = report.run.exact_threshold;
  run["family"] = report.run.family;
  run["ci_mode"] = report.run.ci_mode;
  run["invalid_handling"] = report.run.invalid_handling;
  run["gold"] = report.run.gold;
  run["predictions"] = report.run.predictions;
  j["run"] = std::move(run);
  j["summary"] = RowsToJson(report.summary);
  j["depths"] = AggregatesToJson(report.aggregates);
  ordered_json subsets = ordered_json::array();
  for (const auto& s : report.subsets) {
    ordered_json sj;
    sj["subset"] = s.subset;
    sj["summary"] = RowsToJson(s.rows);
    sj["depths"] = AggregatesToJson(s.aggregates);
    subsets.push_back(std::move(sj));
  }
  j["subsets"] = std::move(subsets);
  ordered_json records = ordered_json::array();
  for (const auto& r : report.records) records.push_back(RecordToJson(r));
  j["records"] = std::move(records);
  return j;
}

Series SeriesFromJson(const nlohmann::json& report_json) {
  try {
    if (report_json.at("schema_version").get<int>() != kSchemaVersion) {
      throw ReportError("unsupported report schema version");
    }
    Series s;
    s.label = report_json.at("run").at("label").get<std::string>();
    for (const auto& d : report_json.at("depths")) {
      const int depth = d.at("depth").get<int>();
      if (d.at("scored").get<int>() > 0) {
        s.f1[depth] = d.at("mean_f1").get<double>();
        s.precision[depth] = d.at("mean_precision").get<double>();
        s.recall[depth] = d.at("mean_recall").get<double>();
      }
      s.errors[depth] = d.at("error_count").get<int>();
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ReportError(std::string("malformed report: ") + e.what());
  }
}

Series ReadSeries(const fs::path& report_file) {
  std::ifstream in(report_file, std::ios::binary);
  if (!in) throw ReportError("cannot open " + report_file.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ReportError(report_file.string() + ": " + e.what());
  }
  return SeriesFromJson(j);
}

std::string_view MetricStem(Metric metric) {
  switch (metric) {
    case Metric::kF1: return "f1";
    case Metric::kPrecision: return "precision";
    case Metric::kRecall: return "recall";
    case Metric::kErrors: return "errors";
  }
  return "f1";
}

std::string RenderCsv(const std::vector<Series>& series, Metric metric) {
  std::set<int> depths;
  for (const auto& s : series) {
    for (const auto* values : {&s.f1, &s.precision, &s.recall, &s.errors}) {
      for (const auto& [d, v] : *values) depths.insert(d);
    }
  }
  std::string out = "depth";
  for (const auto& s : series) out += "," + s.label;
  out += '\n';
  for (int d : depths) {
    out += std::to_string(d);
    for (const auto& s : series) {
      out += ',';
      const auto& values = Values(s, metric);
      auto it = values.find(d);
      if (it == values.end()) continue;
      out += metric == Metric::kErrors ? fmt::format("{:.0f}", it->second) : fmt::format("{:.6f}", it->second);
    }
    out += '\n';
  }
  return out;
}

std::string RenderChart(const std::vector<Series>& series, Metric metric) {
  constexpr double kWidth = 720, kHeight = 420;
  constexpr double kLeft = 64, kRight = 170, kTop = 44, kBottom = 56;
  constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  int lo = 0, hi = 1;
  double y_max = 1.0;
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [d, v] : s.errors) {
      lo = any ? std::min(lo, d) : d;
      hi = any ? std::max(hi, d) : d;
      any = true;
    }
    if (metric == Metric::kErrors) {
      for (const auto& [d, v] : s.errors) y_max = std::max(y_max, v);
    }
  }
  if (hi == lo) hi = lo + 1;
  if (metric == Metric::kErrors) y_max = std::ceil(y_max);

  auto x_of = [&](double d) { return kLeft + (d - lo) / (hi - lo) * plot_w; };
  auto y_of = [&](double v) { return kTop + plot_h - v / y_max * plot_h; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" viewBox=\"0 0 {0:.0f} "
      "{1:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  svg += fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", kWidth, kHeight);
  svg += fmt::format("<text x=\"{:.2f}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                     kLeft + plot_w / 2, MetricTitle(metric));

  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double v = y_max * t / kTicks;
    const double y = y_of(v);
    svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#dddddd\"/>\n", kLeft,
                       y, kLeft + plot_w, y);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 6, y + 4,
                       metric == Metric::kErrors ? fmt::format("{:.1f}", v) : fmt::format("{:.2f}", v));
  }
  for (int d = lo; d <= hi; ++d) {
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", x_of(d),
                       kTop + plot_h + 18, d);
  }
  svg += fmt::format(
      "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n"
      "<line x1=\"{0:.2f}\" y1=\"{3:.2f}\" x2=\"{0:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n",
      kLeft, kTop + plot_h, kLeft + plot_w, kTop);
  svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">AMR depth</text>\n", kLeft + plot_w / 2,
                     kHeight - 14);

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kColors[i % std::size(kColors)];
    const auto& values = Values(s, metric);
    std::string points;
    for (const auto& [d, v] : values) {
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.2f},{:.2f}", x_of(d), y_of(v));
    }
    svg += fmt::format("<g class=\"series\" data-label=\"{}\">\n", XmlEscape(s.label));
    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", color, points);
    for (const auto& [d, v] : values) {
      svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", x_of(d), y_of(v), color);
    }
    svg += "</g>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    svg += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
        kWidth - kRight + 16, ly, kWidth - kRight + 40, color);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", kWidth - kRight + 46, ly + 4,
                       XmlEscape(s.label));
  }
  svg += "</svg>\n";
  return svg;
}

void WritePlots(const std::vector<Series>& series, const fs::path& dir) {
  for (Metric metric : kAllMetrics) {
    const std::string stem(MetricStem(metric));
    WriteFile(dir / (stem + ".csv"), RenderCsv(series, metric));
    WriteFile(dir / (stem + ".svg"), RenderChart(series, metric));
  }
}

void EmitReport(const Report& report, const fs::path& dir) {
  if (report.records.empty()) throw ReportError("nothing to report");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ReportError("cannot create " + dir.string() + ": " + ec.message());

  const ordered_json json = ToJson(report);
  WriteFile(dir / kReportFile, json.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n");

  ordered_json meta;
  meta["tool"] = "amrbench";
  meta["version"] = AMRBENCH_VERSION;
  meta["generated_at"] = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(
                                                                   std::chrono::system_clock::now())));
  WriteFile(dir / kMetadataFile, meta.dump(2) + "\n");

  // Plots are rendered from the file just written, never from memory.
  WritePlots({ReadSeries(dir / kReportFile)}, dir);
}

void CompareReports(const std::vector<fs::path>& report_files, const fs::path& dir) {
  if (report_files.empty()) throw ReportError("nothing to report");
  std::vector<Series> series;
  for (const auto& file : report_files) series.push_back(ReadSeries(file));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ReportError("cannot create " + dir.string() + ": " + ec.message());
  WritePlots(series, dir);
}

}  // namespace amrbench::report

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

#include "amrbench/evaluator.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <istream>
#include <numeric>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

namespace amrbench::evaluator {

std::string_view InvalidHandlingName(InvalidHandling mode) {
  return mode == InvalidHandling::kExclude ? "exclude" : "zero";
}

std::optional<InvalidHandling> ParseInvalidHandling(std::string_view name) {
  if (name == "exclude") return InvalidHandling::kExclude;
  if (name == "zero" || name == "score-as-zero") return InvalidHandling::kScoreAsZero;
  return std::nullopt;
}

std::string_view CiModeName(CiMode mode) { return mode == CiMode::kPerDepth ? "per-depth" : "per-sentence"; }

std::optional<CiMode> ParseCiMode(std::string_view name) {
  if (name == "per-depth") return CiMode::kPerDepth;
  if (name == "per-sentence") return CiMode::kPerSentence;
  return std::nullopt;
}

namespace {

std::string JoinIds(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  return out;
}

}  // namespace

MissingPredictionsError::MissingPredictionsError(std::vector<std::string> ids)
    : std::runtime_error("no prediction for entries: " + JoinIds(ids)), ids_(std::move(ids)) {}

std::vector<EvalRecord> Evaluate(const std::vector<corpus::CorpusEntry>& gold, const Predictions& predictions,
                                 extraction::TemplateFamily family, const EvalConfig& config) {
  std::vector<std::string> missing;
  for (const auto& entry : gold) {
    if (!predictions.count(entry.id)) missing.push_back(entry.id);
  }
  if (!missing.empty()) throw MissingPredictionsError(std::move(missing));

  std::vector<EvalRecord> records(gold.size());
  std::vector<std::exception_ptr> failures(gold.size());

  auto evaluate_one = [&](std::size_t i) {
    const corpus::CorpusEntry& entry = gold[i];
    const std::string& raw = predictions.at(entry.id);
    EvalRecord& record = records[i];
    record.entry_id = entry.id;
    record.depth = entry.depth;
    record.subset = entry.subset;
    record.raw_length = raw.size();

    smatch::ScoreConfig scoring = config.scoring;
    scoring.seed = smatch::DerivePairSeed(config.scoring.seed, entry.id);
    const std::string extracted = extraction::ExtractAmr(raw, family, config.extraction);
    auto outcome = smatch::ScorePair(entry.amr_text, extracted, scoring, entry.id);
    if (auto* report = std::get_if<penman::StructuralReport>(&outcome)) {
      record.structural = std::move(*report);
    } else {
      record.score = std::get<smatch::MappingResult>(std::move(outcome));
    }
  };

  std::size_t workers = config.workers > 0 ? static_cast<std::size_t>(config.workers)
                                           : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(gold.size(), 1));
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < gold.size(); i = next++) {
      try {
        evaluate_one(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return records;
}

namespace {

// Order-independent mean: values are summed in sorted order.
double SortedMean(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

std::vector<DepthAggregate> AggregateByDepth(std::span<const EvalRecord> records, InvalidHandling invalid) {
  if (records.empty()) throw std::invalid_argument("cannot aggregate an empty record list");
  struct Bucket {
    int n = 0;
    int errors = 0;
    std::vector<double> f1, precision, recall;
  };
  std::map<int, Bucket> buckets;
  for (const auto& record : records) {
    Bucket& b = buckets[record.depth];
    ++b.n;
    if (record.score) {
      b.f1.push_back(record.score->f1);
      b.precision.push_back(record.score->precision);
      b.recall.push_back(record.score->recall);
    } else {
      ++b.errors;
      if (invalid == InvalidHandling::kScoreAsZero) {
        b.f1.push_back(0.0);
        b.precision.push_back(0.0);
        b.recall.push_back(0.0);
      }
    }
  }
  std::vector<DepthAggregate> out;
  out.reserve(buckets.size());
  for (auto& [depth, b] : buckets) {
    DepthAggregate agg;
    agg.depth = depth;
    agg.n = b.n;
    agg.error_count = b.errors;
    agg.scored = static_cast<int>(b.f1.size());
    agg.mean_f1 = SortedMean(std::move(b.f1));
    agg.mean_precision = SortedMean(std::move(b.precision));
    agg.mean_recall = SortedMean(std::move(b.recall));
    out.push_back(agg);
  }
  return out;
}

double ZScore(double level) {
  struct Entry {
    double level;
    double z;
  };
  static constexpr Entry kTable[] = {{0.90, 1.645}, {0.95, 1.96}, {0.99, 2.576}};
  for (const auto& e : kTable) {
    if (std::abs(e.level - level) < 1e-12) return e.z;
  }
  throw std::invalid_argument("unsupported confidence level " + std::to_string(level));
}

ConfidenceInterval ComputeConfidenceInterval(std::span<const double> values, double level) {
  if (values.size() < 2) throw std::domain_error("confidence interval needs at least two values");
  const double z = ZScore(level);
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double stddev = std::sqrt(ss / (n - 1.0));
  return {mean, z * stddev / std::sqrt(n)};
}

namespace {

SummaryRow MetricRow(std::string metric, const std::vector<double>& values, bool allow_single) {
  SummaryRow row{std::move(metric), 0.0, std::nullopt};
  if (values.size() >= 2) {
    const auto ci = ComputeConfidenceInterval(values);
    row.mean = ci.mean;
    row.ci_half_width = ci.half_width;
  } else if (allow_single && values.size() == 1) {
    row.mean = values.front();
  } else if (!allow_single) {
    throw std::domain_error("summary needs at least two depth levels with scored records");
  }
  return row;
}

SummaryRow ErrorRow(std::span<const DepthAggregate> aggregates) {
  double total = 0.0;
  for (const auto& a : aggregates) total += a.error_count;
  const double mean = aggregates.empty() ? 0.0 : total / static_cast<double>(aggregates.size());
  return {"MeanErrorCount", mean, std::nullopt};
}

std::vector<SummaryRow> SummarizeLevels(std::span<const DepthAggregate> aggregates, bool allow_single) {
  std::vector<double> f1, precision, recall;
  for (const auto& a : aggregates) {
    if (a.scored == 0) continue;
    f1.push_back(a.mean_f1);
    precision.push_back(a.mean_precision);
    recall.push_back(a.mean_recall);
  }
  return {MetricRow("F1", f1, allow_single), MetricRow("Precision", precision, allow_single),
          MetricRow("Recall", recall, allow_single), ErrorRow(aggregates)};
}

}  // namespace

std::vector<SummaryRow> Summarize(std::span<const DepthAggregate> aggregates) {
  if (aggregates.size() < 2) throw std::domain_error("summary needs at least two depth levels");
  return SummarizeLevels(aggregates, false);
}

std::vector<SummaryRow> SummarizePerSentence(std::span<const EvalRecord> records,
                                             std::span<const DepthAggregate> aggregates, InvalidHandling invalid) {
  std::vector<double> f1, precision, recall;
  for (const auto& r : records) {
    if (r.score) {
      f1.push_back(r.score->f1);
      precision.push_back(r.score->precision);
      recall.push_back(r.score->recall);
    } else if (invalid == InvalidHandling::kScoreAsZero) {
      f1.push_back(0.0);
      precision.push_back(0.0);
      recall.push_back(0.0);
    }
  }
  for (auto* v : {&f1, &precision, &recall}) std::sort(v->begin(), v->end());
  return {MetricRow("F1", f1, false), MetricRow("Precision", precision, false),
          MetricRow("Recall", recall, false), ErrorRow(aggregates)};
}

std::vector<SubsetSummary> SummarizeBySubset(std::span<const EvalRecord> records, InvalidHandling invalid) {
  std::map<std::string, std::vector<EvalRecord>> groups;
  for (const auto& r : records) groups[r.subset].push_back(r);
  std::vector<SubsetSummary> out;
  for (auto& [subset, group] : groups) {
    SubsetSummary s;
    s.subset = subset;
    s.aggregates = AggregateByDepth(group, invalid);
    s.rows = SummarizeLevels(s.aggregates, true);
    out.push_back(std::move(s));
  }
  return out;
}

Predictions ReadPredictions(std::istream& in) {
  Predictions predictions;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error("predictions line " + std::to_string(number) + ": " + e.what());
    }
    if (!record.is_object() || !record.contains("id") || !record["id"].is_string()) {
      throw std::runtime_error("predictions line " + std::to_string(number) + ": missing string field 'id'");
    }
    std::string raw;
    if (record.contains("raw") && record["raw"].is_string()) {
      raw = record["raw"].get<std::string>();
    } else if (!record.value("failed", false)) {
      throw std::runtime_error("predictions line " + std::to_string(number) + ": missing string field 'raw'");
    }
    const std::string id = record["id"].get<std::string>();
    if (!predictions.emplace(id, std::move(raw)).second) {
      throw std::runtime_error("predictions line " + std::to_string(number) + ": duplicate id '" + id + "'");
    }
  }
  return predictions;
}

void WritePrediction(std::ostream& out, const std::string& id, const std::string& raw) {
  nlohmann::ordered_json record;
  record["id"] = id;
  record["raw"] = raw;
  out << record.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
}

}  // namespace amrbench::evaluator

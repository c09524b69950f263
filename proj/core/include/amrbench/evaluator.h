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

// Corpus-level evaluation: gold entries are paired with raw generations,
// each generation is extracted, validated and scored, and the records are
// folded into per-depth aggregates and a summary with 95% intervals taken
// across depth levels.

#ifndef AMRBENCH_EVALUATOR_H_
#define AMRBENCH_EVALUATOR_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "amrbench/corpus.h"
#include "amrbench/extraction.h"
#include "amrbench/penman.h"
#include "amrbench/smatch.h"

namespace amrbench::evaluator {

// How structurally invalid generations enter the semantic means.
enum class InvalidHandling {
  kExclude,      // counted only in the error count
  kScoreAsZero,  // also contribute P = R = F1 = 0
};

// What the summary interval is computed over.
enum class CiMode { kPerDepth, kPerSentence };

std::string_view InvalidHandlingName(InvalidHandling mode);
std::optional<InvalidHandling> ParseInvalidHandling(std::string_view name);
std::string_view CiModeName(CiMode mode);
std::optional<CiMode> ParseCiMode(std::string_view name);

struct EvalConfig {
  smatch::ScoreConfig scoring;  // scoring.seed is the run seed
  extraction::ExtractionTable extraction;
  InvalidHandling invalid = InvalidHandling::kExclude;
  int workers = 0;  // 0: one per hardware thread
};

struct EvalRecord {
  std::string entry_id;
  int depth = 0;
  std::string subset;
  penman::StructuralReport structural;
  std::optional<smatch::MappingResult> score;  // present iff structural.valid()
  std::size_t raw_length = 0;
};

class MissingPredictionsError : public std::runtime_error {
 public:
  explicit MissingPredictionsError(std::vector<std::string> ids);
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
};

using Predictions = std::map<std::string, std::string>;

// One record per gold entry, in gold order. Each pair is scored with a seed
// derived from the run seed and the entry id, so results do not depend on
// worker count or scheduling. Throws MissingPredictionsError and
// smatch::CorpusIntegrityError.
std::vector<EvalRecord> Evaluate(const std::vector<corpus::CorpusEntry>& gold, const Predictions& predictions,
                                 extraction::TemplateFamily family, const EvalConfig& config);

struct DepthAggregate {
  int depth = 0;
  int n = 0;
  int error_count = 0;  // structurally invalid generations
  int scored = 0;       // records contributing to the means
  double mean_f1 = 0.0;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
};

// Grouped by depth, ascending. Means are 0 where nothing was scored.
// Throws std::invalid_argument on an empty record list.
std::vector<DepthAggregate> AggregateByDepth(std::span<const EvalRecord> records,
                                             InvalidHandling invalid = InvalidHandling::kExclude);

struct ConfidenceInterval {
  double mean = 0.0;
  double half_width = 0.0;
};

// z for the supported confidence levels 0.90, 0.95 and 0.99.
double ZScore(double level);

// mean ± z * s / sqrt(n) with the sample standard deviation. Throws
// std::domain_error for fewer than two values.
ConfidenceInterval ComputeConfidenceInterval(std::span<const double> values, double level = 0.95);

struct SummaryRow {
  std::string metric;  // "F1", "Precision", "Recall", "MeanErrorCount"
  double mean = 0.0;
  std::optional<double> ci_half_width;
};

// F1, Precision and Recall with intervals across depth levels that have
// scored records, plus MeanErrorCount averaged over all depth levels.
// Throws std::domain_error with fewer than two depth levels.
std::vector<SummaryRow> Summarize(std::span<const DepthAggregate> aggregates);

// As Summarize, but intervals are taken over individual records.
std::vector<SummaryRow> SummarizePerSentence(std::span<const EvalRecord> records,
                                             std::span<const DepthAggregate> aggregates,
                                             InvalidHandling invalid = InvalidHandling::kExclude);

struct SubsetSummary {
  std::string subset;
  std::vector<DepthAggregate> aggregates;
  // Intervals are absent when the subset spans fewer than two depth levels.
  std::vector<SummaryRow> rows;
};

// Per-subset depth aggregates and summaries, subsets sorted by name.
std::vector<SubsetSummary> SummarizeBySubset(std::span<const EvalRecord> records,
                                             InvalidHandling invalid = InvalidHandling::kExclude);

// Line-delimited JSON: {"id": "...", "raw": "..."} per line; records with
// "failed": true are kept with whatever raw text they carry. Throws
// std::runtime_error naming the line on malformed input or duplicate ids.
Predictions ReadPredictions(std::istream& in);
void WritePrediction(std::ostream& out, const std::string& id, const std::string& raw);

}  // namespace amrbench::evaluator

#endif  // AMRBENCH_EVALUATOR_H_

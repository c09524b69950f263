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

// SMATCH: precision, recall and F1 over matched triples under the best
// injective mapping from predicted variables to gold variables.
//
// Two search routes are provided. HillClimb() is the production scorer:
// steepest-ascent over remap/unmap/swap moves, seeded greedily by concept
// and then restarted from uniformly random injections. BruteForceScore()
// enumerates injections exactly and serves as the oracle for small graphs.
//
// Triples compare case-insensitively, and double quotes around constants are
// ignored, so ":ARG0" matches ":arg0" and "Africa" matches Africa.

#ifndef AMRBENCH_SMATCH_H_
#define AMRBENCH_SMATCH_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "amrbench/analysis.h"
#include "amrbench/penman.h"

namespace amrbench::smatch {

// Partial injective map, predicted variable -> gold variable. Pairs are kept
// sorted by predicted name.
class VariableMapping {
 public:
  VariableMapping() = default;
  // Throws std::invalid_argument when not injective or a key repeats.
  explicit VariableMapping(std::vector<std::pair<std::string, std::string>> pairs);

  const std::vector<std::pair<std::string, std::string>>& pairs() const { return pairs_; }
  const std::string* Find(std::string_view predicted) const;
  std::size_t size() const { return pairs_.size(); }

  bool operator==(const VariableMapping&) const = default;

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
};

struct MappingResult {
  VariableMapping mapping;
  int matched = 0;
  int predicted_total = 0;
  int gold_total = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int restarts_used = 0;
  bool exact = false;  // produced by the exhaustive oracle
};

// P = matched / predicted_total, R = matched / gold_total, F1 harmonic mean;
// each is 0 when its denominator is 0.
MappingResult MakeResult(VariableMapping mapping, int matched, int predicted_total, int gold_total);

// Predicted triples that, renamed through `mapping`, equal a distinct gold
// triple. Each gold triple is consumed at most once.
int MatchCount(const VariableMapping& mapping, const analysis::TripleSet& gold,
               const analysis::TripleSet& predicted);

// Greedy initial mapping: each predicted variable, in name order, takes the
// name-first unused gold variable with the same concept.
VariableMapping GreedyConceptMapping(const analysis::TripleSet& gold, const analysis::TripleSet& predicted);

struct HillClimbOptions {
  int restarts = 4;
  std::uint64_t seed = 0;
};

// Deterministic in (gold, predicted, options). Restart 0 starts from the
// greedy mapping; later restarts from seeded uniform random injections.
// Stops early once every predicted or every gold triple is matched.
MappingResult HillClimb(const analysis::TripleSet& gold, const analysis::TripleSet& predicted,
                        const HillClimbOptions& options);

class SizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kDefaultMaxExactVariables = 8;

// Exact maximum over all injective mappings. Throws SizeError when both
// graphs have more than `max_variables` variables.
MappingResult BruteForceScore(const analysis::TripleSet& gold, const analysis::TripleSet& predicted,
                              int max_variables = kDefaultMaxExactVariables);

struct ScoreConfig {
  int restarts = 4;
  std::uint64_t seed = 0;
  // Pairs where both sides have at most this many variables are scored
  // exactly. 0 disables the exact route.
  int exact_threshold = 8;
};

// Raised when a gold graph fails to parse.
class CorpusIntegrityError : public std::runtime_error {
 public:
  CorpusIntegrityError(std::string entry_id, const std::string& what)
      : std::runtime_error(what), entry_id_(std::move(entry_id)) {}
  const std::string& entry_id() const { return entry_id_; }

 private:
  std::string entry_id_;
};

using ScoreOutcome = std::variant<MappingResult, penman::StructuralReport>;

// Scores two parsed graphs with the configured route.
MappingResult ScoreGraphs(const penman::AmrGraph& gold, const penman::AmrGraph& predicted,
                          const ScoreConfig& config);

// Parses both sides. An invalid prediction yields its StructuralReport; an
// invalid gold graph throws CorpusIntegrityError naming `entry_id`.
ScoreOutcome ScorePair(std::string_view gold_text, std::string_view predicted_text, const ScoreConfig& config,
                       std::string_view entry_id = {});

// Per-pair seed from a run seed and the entry id.
std::uint64_t DerivePairSeed(std::uint64_t run_seed, std::string_view entry_id);

}  // namespace amrbench::smatch

#endif  // AMRBENCH_SMATCH_H_

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

// Commands behind the amrbench binary. Each command writes to the given
// streams and returns a process exit code, so tests can drive them without
// spawning processes.
//
// A run is governed by one JSON configuration file:
//
//   {
//     "version": 1,
//     "seed": 13,
//     "label": "llama32-gold",
//     "smatch": {"restarts": 4, "exact_threshold": 8},
//     "family": "llama32",
//     "delimiters": {"phi35": {"assistant_start": "<|assistant|>", "turn_end": "<|end|>"}},
//     "strip_reasoning": {"deepseek-r1-llama-distilled": true},
//     "depth_range": [1, 10],
//     "per_depth": 30,
//     "ci_mode": "per-depth",
//     "invalid_handling": "exclude",
//     "workers": 0,
//     "split": "test",
//     "subsets": {"bolt": "Bolt"},
//     "system_prompt": "...",
//     "skip_invalid": false,
//     "gold": "gold/", "predictions": "raw.jsonl", "ids": "ids.txt", "output": "report/"
//   }
//
// Every key is optional and unknown keys are rejected. Relative paths are
// resolved against the directory holding the file. Command-line flags
// override the file.

#ifndef AMRBENCH_TOOLS_CLI_H_
#define AMRBENCH_TOOLS_CLI_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "amrbench/corpus.h"
#include "amrbench/evaluator.h"
#include "amrbench/extraction.h"

namespace amrbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitStructural = 1;
inline constexpr int kExitUsage = 2;

inline constexpr int kConfigVersion = 1;
inline constexpr const char* kSeedEnvironment = "AMR_BENCH_SEED";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<std::uint64_t> seed;
  std::string label = "run";
  int restarts = 4;
  int exact_threshold = smatch::kDefaultMaxExactVariables;
  extraction::TemplateFamily family = extraction::TemplateFamily::kLlama32;
  extraction::ExtractionTable extraction;
  corpus::DepthRange depth_range{1, 10};
  int per_depth = 30;
  evaluator::CiMode ci_mode = evaluator::CiMode::kPerDepth;
  evaluator::InvalidHandling invalid = evaluator::InvalidHandling::kExclude;
  int workers = 0;
  corpus::Split split = corpus::Split::kTest;
  corpus::SubsetMap subsets = corpus::SubsetMap::Default();
  std::string system_prompt = std::string(corpus::kDefaultSystemPrompt);
  bool skip_invalid = false;
  std::filesystem::path gold;
  std::filesystem::path predictions;
  std::filesystem::path ids;
  std::filesystem::path output;
};

// Throws ConfigError on unknown keys, wrong types, a version other than
// kConfigVersion, or values violating restarts >= 1, 0 <= exact_threshold
// <= 10, 0 <= min <= max depth, per_depth >= 1 and workers >= 0.
RunConfig ParseRunConfig(const nlohmann::json& json, const std::filesystem::path& base_dir = {});
RunConfig LoadRunConfig(const std::filesystem::path& path);
void CheckRunConfig(const RunConfig& config);

// Flag, then config file, then AMR_BENCH_SEED, then 0. Throws ConfigError
// when the environment value is not an unsigned integer.
std::uint64_t EffectiveSeed(const RunConfig& config);

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

// Pretty-prints one graph file, or summarizes every file of a directory one
// line each. 1 when any graph has structural errors.
int CmdParse(const std::filesystem::path& path, Streams io);

// Structural check of a graph file, a directory of graph files, or (with
// `corpus`) every entry of a corpus file or directory.
int CmdValidate(const std::filesystem::path& path, bool corpus, Streams io);

// Prints "Precision p / Recall r / F1 f" lines with four decimals. An
// invalid predicted or gold graph is an integrity failure (2).
int CmdScore(const std::filesystem::path& gold, const std::filesystem::path& predicted, const RunConfig& config,
             Streams io);

// Scores config.predictions against config.gold and writes the report
// directory config.output. 2 on missing predictions or an invalid gold
// graph.
int CmdEval(const RunConfig& config, Streams io);

// Writes fine-tuning records, or inference prompts, for config.gold.
int CmdPrepare(const RunConfig& config, bool inference, Streams io);

// Depth-stratified sample of config.gold: ids one per line on io.out, or to
// config.output when set. `corpus_out` additionally receives the sampled
// entries in corpus format.
int CmdSample(const RunConfig& config, const std::filesystem::path& corpus_out, Streams io);

// Re-renders CSVs and charts from one or more report.json files.
int CmdReport(const std::vector<std::filesystem::path>& reports, const std::filesystem::path& out_dir, Streams io);

}  // namespace amrbench::cli

#endif  // AMRBENCH_TOOLS_CLI_H_

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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "amrbench/analysis.h"
#include "amrbench/penman.h"
#include "amrbench/report.h"
#include "amrbench/smatch.h"
#include "amrbench/text.h"

namespace amrbench::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "version", "seed",    "label",          "smatch",  "family", "delimiters",    "strip_reasoning",
      "depth_range", "per_depth", "ci_mode", "invalid_handling", "workers", "split", "subsets",
      "system_prompt", "skip_invalid", "gold", "predictions", "ids", "output"};
  return keys;
}

template <typename T>
T Get(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: wrong type for '" + where + "'");
  }
}

int GetInt(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError("config: '" + where + "' must be an integer");
  return j.get<int>();
}

std::string GetString(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError("config: '" + where + "' must be a string");
  return j.get<std::string>();
}

extraction::TemplateFamily FamilyOrThrow(const std::string& name) {
  auto family = extraction::ParseFamily(name);
  if (!family) throw ConfigError("config: unknown template family '" + name + "'");
  return *family;
}

fs::path ResolvePath(const json& j, const std::string& where, const fs::path& base) {
  fs::path p = GetString(j, where);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<fs::path> FilesUnder(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string KindsOf(const penman::StructuralReport& report) {
  std::string out;
  for (const auto& e : report.errors) {
    if (!out.empty()) out += ", ";
    out += penman::ErrorKindName(e.kind);
  }
  return out;
}

corpus::LoadOptions LoadOptionsOf(const RunConfig& config) {
  corpus::LoadOptions options;
  options.split = config.split;
  options.subsets = config.subsets;
  options.skip_invalid = config.skip_invalid;
  return options;
}

std::vector<corpus::CorpusEntry> LoadGold(const RunConfig& config, Streams io) {
  if (config.gold.empty()) throw ConfigError("no gold corpus given");
  corpus::LoadOptions options = LoadOptionsOf(config);
  options.on_skip = [&io](const corpus::SkippedEntry& s) { io.err << "skipped " << s.id << ": " << s.reason << '\n'; };
  return corpus::LoadPath(config.gold, options);
}

// Keeps the entries listed in `ids_file`, in corpus order.
std::vector<corpus::CorpusEntry> FilterByIds(std::vector<corpus::CorpusEntry> entries, const fs::path& ids_file) {
  std::set<std::string> wanted;
  std::istringstream lines(ReadFile(ids_file));
  std::string line;
  while (std::getline(lines, line)) {
    std::string id(text::Trim(line));
    if (!id.empty()) wanted.insert(id);
  }
  std::vector<corpus::CorpusEntry> kept;
  for (auto& e : entries) {
    if (wanted.erase(e.id)) kept.push_back(std::move(e));
  }
  if (!wanted.empty()) throw ConfigError("id list names entries absent from the corpus: " + *wanted.begin());
  return kept;
}

void PrintSummary(const std::vector<evaluator::SummaryRow>& rows, std::ostream& out) {
  for (const auto& row : rows) {
    if (row.ci_half_width) {
      out << fmt::format("{:<15} {:.4f} ± {:.4f}\n", row.metric, row.mean, *row.ci_half_width);
    } else {
      out << fmt::format("{:<15} {:.4f}\n", row.metric, row.mean);
    }
  }
}

}  // namespace

RunConfig ParseRunConfig(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!KnownKeys().count(key)) throw ConfigError("config: unknown key '" + key + "'");
  }
  if (j.contains("version") && GetInt(j["version"], "version") != kConfigVersion) {
    throw ConfigError("config: unsupported version " + j["version"].dump());
  }

  RunConfig config;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("config: 'seed' must be a non-negative integer");
    config.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("label")) config.label = GetString(j["label"], "label");
  if (j.contains("smatch")) {
    const json& s = j["smatch"];
    if (!s.is_object()) throw ConfigError("config: 'smatch' must be an object");
    for (const auto& [key, value] : s.items()) {
      if (key == "restarts") {
        config.restarts = GetInt(value, "smatch.restarts");
      } else if (key == "exact_threshold") {
        config.exact_threshold = GetInt(value, "smatch.exact_threshold");
      } else {
        throw ConfigError("config: unknown key 'smatch." + key + "'");
      }
    }
  }
  if (j.contains("family")) config.family = FamilyOrThrow(GetString(j["family"], "family"));
  if (j.contains("delimiters")) {
    if (!j["delimiters"].is_object()) throw ConfigError("config: 'delimiters' must be an object");
    for (const auto& [name, value] : j["delimiters"].items()) {
      const auto family = FamilyOrThrow(name);
      extraction::Delimiters d = config.extraction.delimiters(family);
      if (!value.is_object()) throw ConfigError("config: 'delimiters." + name + "' must be an object");
      for (const auto& [key, field] : value.items()) {
        if (key == "assistant_start") {
          d.assistant_start = GetString(field, "delimiters." + name + ".assistant_start");
        } else if (key == "turn_end") {
          d.turn_end = GetString(field, "delimiters." + name + ".turn_end");
        } else {
          throw ConfigError("config: unknown key 'delimiters." + name + "." + key + "'");
        }
      }
      config.extraction.Override(family, std::move(d));
    }
  }
  if (j.contains("strip_reasoning")) {
    if (!j["strip_reasoning"].is_object()) throw ConfigError("config: 'strip_reasoning' must be an object");
    for (const auto& [name, value] : j["strip_reasoning"].items()) {
      if (!value.is_boolean()) throw ConfigError("config: 'strip_reasoning." + name + "' must be a boolean");
      config.extraction.SetStripReasoning(FamilyOrThrow(name), value.get<bool>());
    }
  }
  if (j.contains("depth_range")) {
    const json& r = j["depth_range"];
    if (!r.is_array() || r.size() != 2) throw ConfigError("config: 'depth_range' must be [min, max]");
    config.depth_range = {GetInt(r[0], "depth_range[0]"), GetInt(r[1], "depth_range[1]")};
  }
  if (j.contains("per_depth")) config.per_depth = GetInt(j["per_depth"], "per_depth");
  if (j.contains("ci_mode")) {
    auto mode = evaluator::ParseCiMode(GetString(j["ci_mode"], "ci_mode"));
    if (!mode) throw ConfigError("config: 'ci_mode' must be per-depth or per-sentence");
    config.ci_mode = *mode;
  }
  if (j.contains("invalid_handling")) {
    auto mode = evaluator::ParseInvalidHandling(GetString(j["invalid_handling"], "invalid_handling"));
    if (!mode) throw ConfigError("config: 'invalid_handling' must be exclude or zero");
    config.invalid = *mode;
  }
  if (j.contains("workers")) config.workers = GetInt(j["workers"], "workers");
  if (j.contains("split")) {
    auto split = corpus::ParseSplit(GetString(j["split"], "split"));
    if (!split) throw ConfigError("config: 'split' must be train, dev or test");
    config.split = *split;
  }
  if (j.contains("subsets")) {
    if (!j["subsets"].is_object()) throw ConfigError("config: 'subsets' must be an object");
    for (const auto& [token, tag] : j["subsets"].items()) {
      config.subsets.Set(token, GetString(tag, "subsets." + token));
    }
  }
  if (j.contains("system_prompt")) config.system_prompt = GetString(j["system_prompt"], "system_prompt");
  if (j.contains("skip_invalid")) config.skip_invalid = Get<bool>(j["skip_invalid"], "skip_invalid");
  if (j.contains("gold")) config.gold = ResolvePath(j["gold"], "gold", base_dir);
  if (j.contains("predictions")) config.predictions = ResolvePath(j["predictions"], "predictions", base_dir);
  if (j.contains("ids")) config.ids = ResolvePath(j["ids"], "ids", base_dir);
  if (j.contains("output")) config.output = ResolvePath(j["output"], "output", base_dir);

  CheckRunConfig(config);
  return config;
}

RunConfig LoadRunConfig(const fs::path& path) {
  json j;
  try {
    j = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return ParseRunConfig(j, path.parent_path());
}

void CheckRunConfig(const RunConfig& config) {
  if (config.restarts < 1) throw ConfigError("restarts must be at least 1");
  if (config.exact_threshold < 0 || config.exact_threshold > 10) {
    throw ConfigError("exact_threshold must lie in [0, 10]");
  }
  if (config.depth_range.min < 0 || config.depth_range.min > config.depth_range.max) {
    throw ConfigError("depth range must satisfy 0 <= min <= max");
  }
  if (config.per_depth < 1) throw ConfigError("per_depth must be at least 1");
  if (config.workers < 0) throw ConfigError("workers must be non-negative");
}

std::uint64_t EffectiveSeed(const RunConfig& config) {
  if (config.seed) return *config.seed;
  const char* env = std::getenv(kSeedEnvironment);
  if (env == nullptr || *env == '\0') return 0;
  std::string_view s(env);
  std::uint64_t seed = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(std::string(kSeedEnvironment) + " is not an unsigned integer: " + env);
  }
  return seed;
}

int CmdParse(const fs::path& path, Streams io) {
  try {
    if (fs::is_directory(path)) {
      int failures = 0;
      for (const auto& file : FilesUnder(path)) {
        auto result = penman::Parse(ReadFile(file));
        const std::string name = file.filename().string();
        if (result.ok()) {
          io.out << fmt::format("{}: ok, {} variables, depth {}\n", name, result.graph->instances().size(),
                                analysis::Depth(*result.graph));
        } else {
          ++failures;
          io.out << fmt::format("{}: {} errors: {}\n", name, result.report.errors.size(), KindsOf(result.report));
        }
      }
      return failures > 0 ? kExitStructural : kExitOk;
    }
    auto result = penman::Parse(ReadFile(path));
    if (!result.ok()) {
      io.err << result.report.Describe();
      return kExitStructural;
    }
    io.out << penman::Serialize(*result.graph) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int CmdValidate(const fs::path& path, bool corpus, Streams io) {
  try {
    if (corpus) {
      corpus::LoadOptions options;
      options.skip_invalid = true;
      std::vector<corpus::SkippedEntry> skipped;
      options.on_skip = [&skipped](const corpus::SkippedEntry& s) { skipped.push_back(s); };
      const auto entries = corpus::LoadPath(path, options);
      for (const auto& s : skipped) io.out << s.id << ": " << s.reason << '\n';
      io.out << fmt::format("{} valid, {} invalid\n", entries.size(), skipped.size());
      return skipped.empty() ? kExitOk : kExitStructural;
    }
    std::vector<fs::path> files = fs::is_directory(path) ? FilesUnder(path) : std::vector<fs::path>{path};
    int failures = 0;
    for (const auto& file : files) {
      const auto report = penman::Validate(ReadFile(file));
      if (report.valid()) {
        io.out << file.filename().string() << ": valid\n";
      } else {
        ++failures;
        io.out << file.filename().string() << ": invalid\n" << report.Describe();
      }
    }
    return failures > 0 ? kExitStructural : kExitOk;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int CmdScore(const fs::path& gold, const fs::path& predicted, const RunConfig& config, Streams io) {
  try {
    CheckRunConfig(config);
    smatch::ScoreConfig scoring{config.restarts, EffectiveSeed(config), config.exact_threshold};
    auto outcome = smatch::ScorePair(ReadFile(gold), ReadFile(predicted), scoring, gold.filename().string());
    if (auto* report = std::get_if<penman::StructuralReport>(&outcome)) {
      io.err << "invalid prediction " << predicted.string() << ":\n" << report->Describe();
      return kExitUsage;
    }
    const auto& r = std::get<smatch::MappingResult>(outcome);
    io.out << fmt::format("Precision {:.4f}\nRecall {:.4f}\nF1 {:.4f}\n", r.precision, r.recall, r.f1);
    return kExitOk;
  } catch (const smatch::CorpusIntegrityError& e) {
    io.err << "invalid gold graph " << gold.string() << ":\n" << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int CmdEval(const RunConfig& config, Streams io) {
  try {
    CheckRunConfig(config);
    if (config.predictions.empty()) throw ConfigError("no predictions file given");
    if (config.output.empty()) throw ConfigError("no output directory given");
    auto gold = LoadGold(config, io);
    if (!config.ids.empty()) gold = FilterByIds(std::move(gold), config.ids);

    std::ifstream in(config.predictions, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + config.predictions.string());
    const auto predictions = evaluator::ReadPredictions(in);

    evaluator::EvalConfig eval;
    eval.scoring = {config.restarts, EffectiveSeed(config), config.exact_threshold};
    eval.extraction = config.extraction;
    eval.invalid = config.invalid;
    eval.workers = config.workers;
    auto records = evaluator::Evaluate(gold, predictions, config.family, eval);
    if (predictions.size() > gold.size()) {
      io.err << fmt::format("note: {} predictions have no gold entry\n", predictions.size() - gold.size());
    }

    report::Report rep;
    rep.run = {config.label,
               eval.scoring.seed,
               config.restarts,
               config.exact_threshold,
               std::string(extraction::FamilyName(config.family)),
               std::string(evaluator::CiModeName(config.ci_mode)),
               std::string(evaluator::InvalidHandlingName(config.invalid)),
               config.gold.generic_string(),
               config.predictions.generic_string()};
    rep.aggregates = evaluator::AggregateByDepth(records, config.invalid);
    rep.summary = config.ci_mode == evaluator::CiMode::kPerDepth
                      ? evaluator::Summarize(rep.aggregates)
                      : evaluator::SummarizePerSentence(records, rep.aggregates, config.invalid);
    rep.subsets = evaluator::SummarizeBySubset(records, config.invalid);
    rep.records = std::move(records);
    report::EmitReport(rep, config.output);

    int invalid = 0;
    for (const auto& r : rep.records) invalid += r.score ? 0 : 1;
    io.out << fmt::format("{} entries, {} structurally invalid, {} depth levels\n", rep.records.size(), invalid,
                          rep.aggregates.size());
    PrintSummary(rep.summary, io.out);
    return kExitOk;
  } catch (const evaluator::MissingPredictionsError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const smatch::CorpusIntegrityError& e) {
    io.err << "error: gold entry " << e.entry_id() << " is invalid:\n" << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int CmdPrepare(const RunConfig& config, bool inference, Streams io) {
  try {
    CheckRunConfig(config);
    const auto entries = LoadGold(config, io);
    corpus::FinetuneOptions options;
    options.system_prompt = config.system_prompt;
    options.inference = inference;
    options.table = config.extraction;
    std::size_t written = 0;
    if (config.output.empty()) {
      written = corpus::FormatFinetune(entries, config.family, options, io.out);
    } else {
      std::ofstream out(config.output, std::ios::binary | std::ios::trunc);
      if (!out) throw ConfigError("cannot write " + config.output.string());
      written = corpus::FormatFinetune(entries, config.family, options, out);
      if (!out.flush()) throw ConfigError("write failed for " + config.output.string());
    }
    io.err << fmt::format("{} {} records\n", written, inference ? "prompt" : "fine-tuning");
    return kExitOk;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int CmdSample(const RunConfig& config, const fs::path& corpus_out, Streams io) {
  try {
    CheckRunConfig(config);
    const auto entries = LoadGold(config, io);
    const auto sample = corpus::StratifiedSample(entries, config.per_depth, config.depth_range, EffectiveSeed(config));
    for (const auto& s : sample.shortfalls) {
      io.err << fmt::format("depth {}: {} requested, {} available\n", s.depth, s.requested, s.available);
    }
    std::string ids;
    for (const auto& e : sample.entries) ids += e.id + '\n';
    if (config.output.empty()) {
      io.out << ids;
    } else {
      std::ofstream out(config.output, std::ios::binary | std::ios::trunc);
      if (!out || !(out << ids)) throw ConfigError("cannot write " + config.output.string());
    }
    if (!corpus_out.empty()) {
      std::ofstream out(corpus_out, std::ios::binary | std::ios::trunc);
      if (!out) throw ConfigError("cannot write " + corpus_out.string());
      for (const auto& e : sample.entries) {
        out << "# ::id " << e.id << "\n# ::snt " << e.sentence << '\n' << e.amr_text << "\n\n";
      }
      if (!out.flush()) throw ConfigError("write failed for " + corpus_out.string());
    }
    return kExitOk;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int CmdReport(const std::vector<fs::path>& reports, const fs::path& out_dir, Streams io) {
  try {
    report::CompareReports(reports, out_dir);
    io.out << fmt::format("{} runs plotted into {}\n", reports.size(), out_dir.string());
    return kExitOk;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace amrbench::cli

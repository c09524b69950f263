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

// amrbench: parse, validate, score and evaluate AMR graphs.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.h"

namespace {

using amrbench::cli::RunConfig;

// Run options shared by the corpus commands. Values are applied on top of
// the configuration file only when given.
struct RunFlags {
  std::string config;
  std::uint64_t seed = 0;
  int restarts = 0;
  int exact_threshold = 0;
  std::string family;
  int workers = 0;
  std::string label;
  std::string ci_mode;
  std::string invalid;
  std::string split;
  int depth_min = 0;
  int depth_max = 0;
  int per_depth = 0;
  std::string gold;
  std::string predictions;
  std::string ids;
  std::string output;
  bool skip_invalid = false;

  // The same flag is registered on several subcommands.
  std::vector<std::pair<std::string, CLI::Option*>> given;

  void Add(CLI::App* app, bool corpus) {
    given.emplace_back("seed", app->add_option("--seed", seed, "Random seed (falls back to AMR_BENCH_SEED)"));
    given.emplace_back("restarts", app->add_option("--restarts", restarts, "Hill-climbing restarts"));
    given.emplace_back("exact-threshold",
                       app->add_option("--exact-threshold", exact_threshold,
                                       "Score exactly when both graphs have at most this many variables"));
    if (!corpus) return;
    given.emplace_back("family", app->add_option("--family", family, "Chat template family"));
    given.emplace_back("workers", app->add_option("--workers", workers, "Worker threads (0: all cores)"));
    given.emplace_back("label", app->add_option("--label", label, "Run label used in reports"));
    given.emplace_back("ci-mode", app->add_option("--ci-mode", ci_mode, "per-depth or per-sentence"));
    given.emplace_back("invalid", app->add_option("--invalid", invalid, "exclude or zero"));
    given.emplace_back("split", app->add_option("--split", split, "train, dev or test"));
    given.emplace_back("depth-min", app->add_option("--depth-min", depth_min, "Smallest sampled depth"));
    given.emplace_back("depth-max", app->add_option("--depth-max", depth_max, "Largest sampled depth"));
    given.emplace_back("per-depth", app->add_option("--per-depth", per_depth, "Samples per depth"));
    given.emplace_back("gold", app->add_option("--gold", gold, "Gold corpus file or directory"));
    given.emplace_back("ids", app->add_option("--ids", ids, "Restrict the gold corpus to these ids"));
    given.emplace_back("output", app->add_option("-o,--out", output, "Output file or directory"));
    given.emplace_back("skip-invalid", app->add_flag("--skip-invalid", skip_invalid, "Skip unparseable entries"));
  }

  bool Given(const std::string& name) const {
    for (const auto& [n, opt] : given) {
      if (n == name && opt->count() > 0) return true;
    }
    return false;
  }

  RunConfig Resolve() const {
    using namespace amrbench;
    RunConfig c = config.empty() ? RunConfig{} : cli::LoadRunConfig(config);
    if (Given("seed")) c.seed = seed;
    if (Given("restarts")) c.restarts = restarts;
    if (Given("exact-threshold")) c.exact_threshold = exact_threshold;
    if (Given("family")) {
      auto f = extraction::ParseFamily(family);
      if (!f) throw cli::ConfigError("unknown template family '" + family + "'");
      c.family = *f;
    }
    if (Given("workers")) c.workers = workers;
    if (Given("label")) c.label = label;
    if (Given("ci-mode")) {
      auto m = evaluator::ParseCiMode(ci_mode);
      if (!m) throw cli::ConfigError("--ci-mode must be per-depth or per-sentence");
      c.ci_mode = *m;
    }
    if (Given("invalid")) {
      auto m = evaluator::ParseInvalidHandling(invalid);
      if (!m) throw cli::ConfigError("--invalid must be exclude or zero");
      c.invalid = *m;
    }
    if (Given("split")) {
      auto s = corpus::ParseSplit(split);
      if (!s) throw cli::ConfigError("--split must be train, dev or test");
      c.split = *s;
    }
    if (Given("depth-min")) c.depth_range.min = depth_min;
    if (Given("depth-max")) c.depth_range.max = depth_max;
    if (Given("per-depth")) c.per_depth = per_depth;
    if (Given("gold")) c.gold = gold;
    if (Given("predictions")) c.predictions = predictions;
    if (Given("ids")) c.ids = ids;
    if (Given("output")) c.output = output;
    if (Given("skip-invalid")) c.skip_invalid = skip_invalid;
    cli::CheckRunConfig(c);
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  namespace cli = amrbench::cli;
  cli::Streams io{std::cout, std::cerr};

  CLI::App app{"amrbench: AMR parsing evaluation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", AMRBENCH_VERSION);

  std::string path;
  auto* parse = app.add_subcommand("parse", "Pretty-print a graph file, or summarize a directory of graphs");
  parse->add_option("path", path, "Graph file or directory")->required();

  bool corpus_mode = false;
  auto* validate = app.add_subcommand("validate", "Report structural errors");
  validate->add_option("path", path, "Graph file or directory")->required();
  validate->add_flag("--corpus", corpus_mode, "Treat the input as a corpus file or directory");

  RunFlags flags;
  std::string gold_file, pred_file;
  auto* score = app.add_subcommand("score", "SMATCH precision, recall and F1 of two graph files");
  score->add_option("gold", gold_file, "Gold graph file")->required();
  score->add_option("predicted", pred_file, "Predicted graph file")->required();
  score->add_option("-c,--config", flags.config, "Run configuration file");
  flags.Add(score, false);

  auto* eval = app.add_subcommand("eval", "Score raw generations against a gold corpus and write a report");
  eval->add_option("-c,--config", flags.config, "Run configuration file");
  flags.given.emplace_back("predictions",
                           eval->add_option("--predictions", flags.predictions, "Raw generations (JSONL)"));
  flags.Add(eval, true);

  bool inference = false;
  auto* prepare = app.add_subcommand("prepare", "Write chat-format fine-tuning records or inference prompts");
  prepare->add_option("-c,--config", flags.config, "Run configuration file");
  prepare->add_flag("--inference", inference, "Prompts only, ending in an open assistant turn");
  std::string system_prompt;
  auto* prompt_opt = prepare->add_option("--system-prompt", system_prompt, "System prompt text");
  flags.Add(prepare, true);

  std::string corpus_out;
  auto* sample = app.add_subcommand("sample", "Depth-stratified sample of a corpus");
  sample->add_option("-c,--config", flags.config, "Run configuration file");
  sample->add_option("--corpus-out", corpus_out, "Also write the sampled entries as a corpus file");
  flags.Add(sample, true);

  std::vector<std::string> reports;
  std::string out_dir;
  auto* report = app.add_subcommand("report", "Overlay report.json files into CSVs and charts");
  report->add_option("reports", reports, "report.json files")->required();
  report->add_option("-o,--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    if (*parse) return cli::CmdParse(path, io);
    if (*validate) return cli::CmdValidate(path, corpus_mode, io);
    if (*report) {
      std::vector<std::filesystem::path> files(reports.begin(), reports.end());
      return cli::CmdReport(files, out_dir, io);
    }
    if (*prepare) {
      RunConfig config = flags.Resolve();
      if (prompt_opt->count() > 0) config.system_prompt = system_prompt;
      return cli::CmdPrepare(config, inference, io);
    }
    RunConfig config = flags.Resolve();
    if (*score) return cli::CmdScore(gold_file, pred_file, config, io);
    if (*eval) return cli::CmdEval(config, io);
    if (*sample) return cli::CmdSample(config, corpus_out, io);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  }
  return cli::kExitUsage;
}

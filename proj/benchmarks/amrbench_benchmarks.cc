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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "amrbench/analysis.h"
#include "amrbench/evaluator.h"
#include "amrbench/extraction.h"
#include "amrbench/penman.h"
#include "amrbench/smatch.h"

namespace {

using namespace amrbench;

constexpr const char* kGold = R"((a / accelerate-01
    :ARG0 (t / this)
    :ARG1 (s / speed-01
        :ARG0 t
        :ARG1 (d / desertification
            :location (a2 / and
                :op1 (c / country
                    :location (w2 / world-region :wiki "Sub-Saharan_Africa"
                        :name (n / name :op1 "Sub-Saharan" :op2 "Africa")))
                :op2 (a3 / area
                    :part-of (w / world)
                    :mod (o / other)))))
    :time (u / ultimate)))";

// Same content with renamed variables, one concept changed and one edge
// dropped, so alignment is non-trivial.
constexpr const char* kPredicted = R"((x1 / accelerate-01
    :ARG0 (x2 / this)
    :ARG1 (x3 / speed-01
        :ARG1 (x4 / desertification
            :location (x5 / and
                :op1 (x6 / nation
                    :location (x7 / world-region :wiki "Sub-Saharan_Africa"
                        :name (x8 / name :op1 "Sub-Saharan" :op2 "Africa")))
                :op2 (x9 / area
                    :part-of (x10 / world)
                    :mod (x11 / other)))))
    :time (x12 / ultimate)))";

analysis::TripleSet Triples(const char* text) { return analysis::ExtractTriples(*penman::Parse(text).graph); }

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(penman::Parse(kGold));
}
BENCHMARK(BM_Parse);

void BM_Serialize(benchmark::State& state) {
  const auto graph = *penman::Parse(kGold).graph;
  for (auto _ : state) benchmark::DoNotOptimize(penman::Serialize(graph));
}
BENCHMARK(BM_Serialize);

void BM_HillClimb(benchmark::State& state) {
  const auto gold = Triples(kGold);
  const auto pred = Triples(kPredicted);
  const int restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(smatch::HillClimb(gold, pred, {restarts, 7}));
}
BENCHMARK(BM_HillClimb)->Arg(1)->Arg(4)->Arg(16);

// Exact scoring cost grows with the smaller variable count.
void BM_BruteForce(benchmark::State& state) {
  const std::string gold = "(a / and :op1 (b / boy) :op2 (g / girl) :op3 (d / dog) :op4 (c / cat) :op5 (e / eat-01) "
                           ":op6 (f / fish) :op7 (h / house) :op8 (k / kite))";
  const std::string pred = "(a / and :op1 (b / girl) :op2 (g / boy) :op3 (d / cat) :op4 (c / dog) :op5 (e / fish) "
                           ":op6 (f / eat-01) :op7 (h / kite) :op8 (k / house))";
  const auto gt = analysis::ExtractTriples(*penman::Parse(gold).graph);
  const auto pt = analysis::ExtractTriples(*penman::Parse(pred).graph);
  for (auto _ : state) benchmark::DoNotOptimize(smatch::BruteForceScore(gt, pt, 10));
}
BENCHMARK(BM_BruteForce);

void BM_Extract(benchmark::State& state) {
  const std::string raw = std::string("<|begin_of_text|><|start_header_id|>user<|end_header_id|>\n\nsentence<|eot_id|>"
                                      "<|start_header_id|>assistant<|end_header_id|>\n\n") +
                          kGold + "<|eot_id|>";
  for (auto _ : state) benchmark::DoNotOptimize(extraction::ExtractAmr(raw, extraction::TemplateFamily::kLlama32));
}
BENCHMARK(BM_Extract);

void BM_EvaluateCorpus(benchmark::State& state) {
  std::vector<corpus::CorpusEntry> gold(static_cast<std::size_t>(state.range(0)));
  evaluator::Predictions predictions;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    gold[i].id = "e." + std::to_string(i);
    gold[i].amr_text = kGold;
    gold[i].depth = 7;
    predictions[gold[i].id] = kPredicted;
  }
  evaluator::EvalConfig config;
  config.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluator::Evaluate(gold, predictions, extraction::TemplateFamily::kPlain, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateCorpus)->Arg(100);

}  // namespace

BENCHMARK_MAIN();

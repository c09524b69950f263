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

#include "oracles.h"

#include <algorithm>
#include <functional>
#include <utility>

#include "amrbench/extraction.h"
#include "amrbench/smatch.h"
#include "amrbench/text.h"
#include "random_graphs.h"

namespace amrbench::testing {

using analysis::TripleSet;
using penman::AmrGraph;

int NaiveBestMatch(const TripleSet& gold, const TripleSet& pred) {
  const auto& pv = pred.variables;
  const auto& gv = gold.variables;
  std::vector<int> assignment(pv.size(), -1);
  std::vector<bool> used(gv.size(), false);
  int best = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == pv.size()) {
      std::vector<std::pair<std::string, std::string>> pairs;
      for (std::size_t k = 0; k < pv.size(); ++k) {
        if (assignment[k] >= 0) pairs.emplace_back(pv[k], gv[static_cast<std::size_t>(assignment[k])]);
      }
      best = std::max(best, smatch::MatchCount(smatch::VariableMapping(pairs), gold, pred));
      return;
    }
    assignment[i] = -1;
    rec(i + 1);
    for (std::size_t g = 0; g < gv.size(); ++g) {
      if (used[g]) continue;
      used[g] = true;
      assignment[i] = static_cast<int>(g);
      rec(i + 1);
      used[g] = false;
    }
    assignment[i] = -1;
  };
  rec(0);
  return best;
}

std::vector<TriplePair> RandomPairs(std::uint64_t seed, int count, int max_variables) {
  std::mt19937_64 rng(seed);
  GraphShape shape;
  shape.max_variables = max_variables;
  std::vector<TriplePair> pairs;
  for (int i = 0; i < count; ++i) {
    const AmrGraph g = RandomGraph(rng, shape);
    AmrGraph p = (i % 2 == 0) ? RandomGraph(rng, shape) : RenameVariables(g, rng);
    if (i % 2 == 1) {
      const int edits = static_cast<int>(rng() % 3);
      for (int k = 0; k < edits; ++k) p = Perturb(p, rng, shape);
    }
    pairs.push_back({analysis::ExtractTriples(g), analysis::ExtractTriples(p)});
  }
  return pairs;
}

std::string ReferenceExtraction(const std::string& generated_text) {
  const std::string start(kLlamaStart);
  const std::size_t amr_start = generated_text.find(start);
  if (amr_start == std::string::npos) return generated_text;
  std::string generated_amr = generated_text.substr(amr_start);
  generated_amr = generated_amr.substr(0, generated_amr.find("<|eot_id|>"));
  generated_amr = std::string(text::Trim(generated_amr));
  for (std::size_t at; (at = generated_amr.find(start)) != std::string::npos;) generated_amr.erase(at, start.size());
  return std::string(text::Trim(generated_amr));
}

std::string LlamaGeneration(const std::string& amr) {
  return "<|begin_of_text|><|start_header_id|>system<|end_header_id|>\n\nYou are an AMR parser."
         "<|eot_id|><|start_header_id|>user<|end_header_id|>\n\nThe boy wants to go.<|eot_id|>"
         "<|start_header_id|>assistant<|end_header_id|>\n\n" +
         amr + "<|eot_id|>";
}

std::string RandomTranscript(std::mt19937_64& rng) {
  std::vector<std::string> pieces = {"(b / boy)", "\n", " ", "<think>", "</think>", "<|begin_of_text|>",
                                     "<|start_header_id|>", "<|end_header_id|>", "assistant", "model",
                                     "<bos>", "<|system|>", "<|user|>", "<|eot", "id|>", "<|end"};
  for (extraction::TemplateFamily f : extraction::kAllFamilies) {
    const auto d = extraction::DefaultDelimiters(f);
    if (!d.assistant_start.empty()) pieces.push_back(d.assistant_start);
    if (!d.turn_end.empty()) pieces.push_back(d.turn_end);
  }
  std::string raw;
  const int n = static_cast<int>(rng() % 14);
  for (int i = 0; i < n; ++i) {
    if (rng() % 5 == 0) {
      raw += RandomPenmanNoise(rng, 12);
    } else {
      raw += pieces[rng() % pieces.size()];
    }
  }
  return raw;
}

}  // namespace amrbench::testing

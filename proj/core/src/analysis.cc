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

#include "amrbench/analysis.h"

#include <algorithm>
#include <unordered_map>
#include <utility>

namespace amrbench::analysis {

using penman::AmrGraph;
using penman::Edge;

TripleSet ExtractTriples(const AmrGraph& graph) {
  TripleSet set;
  set.triples.reserve(graph.instances().size() + graph.edges().size());
  for (const auto& inst : graph.instances()) {
    set.triples.push_back({TripleKind::kInstance, kInstanceRelation, inst.variable, inst.concept_label});
    set.variables.push_back(inst.variable);
  }
  for (const auto& edge : graph.edges()) {
    if (edge.target.is_variable()) {
      set.triples.push_back({TripleKind::kRelation, edge.label, edge.source, edge.target.value});
    } else {
      set.triples.push_back({TripleKind::kAttribute, edge.label, edge.source, edge.target.Lexeme()});
    }
  }
  return set;
}

int Depth(const AmrGraph& graph) {
  std::unordered_map<std::string, std::vector<const Edge*>> children;
  for (const auto& edge : graph.edges()) children[edge.source].push_back(&edge);

  // Iterative DFS over nested nodes; each variable is nested at most once so
  // this terminates on any valid graph.
  int deepest = 0;
  std::vector<std::pair<const std::string*, int>> stack{{&graph.root(), 0}};
  while (!stack.empty()) {
    auto [variable, depth] = stack.back();
    stack.pop_back();
    auto it = children.find(*variable);
    if (it == children.end()) continue;
    for (const Edge* edge : it->second) {
      deepest = std::max(deepest, depth + 1);
      if (edge->nests_target) stack.emplace_back(&edge->target.value, depth + 1);
    }
  }
  return deepest;
}

std::vector<std::string> Reentrancies(const AmrGraph& graph) {
  std::unordered_map<std::string, int> incoming;
  for (const auto& edge : graph.edges()) {
    if (edge.target.is_variable()) ++incoming[edge.target.value];
  }
  std::vector<std::string> out;
  for (const auto& inst : graph.instances()) {
    auto it = incoming.find(inst.variable);
    const int count = it == incoming.end() ? 0 : it->second;
    if (count >= 2 || (count >= 1 && inst.variable == graph.root())) out.push_back(inst.variable);
  }
  return out;
}

bool IsInvertible(const std::string& label, const InverseOptions& options) {
  if (!penman::IsInverseLabel(label)) return false;
  if (options.keep_surface_of_labels && (label == ":consist-of" || label == ":part-of")) return false;
  return true;
}

AmrGraph NormalizeInverse(const AmrGraph& graph, const InverseOptions& options) {
  std::vector<Edge> edges;
  edges.reserve(graph.edges().size());
  for (const auto& edge : graph.edges()) {
    if (edge.target.is_variable() && IsInvertible(edge.label, options)) {
      edges.push_back({edge.target.value, edge.label.substr(0, edge.label.size() - 3),
                       penman::EdgeTarget::Variable(edge.source), false});
    } else {
      edges.push_back(edge);
    }
  }
  return AmrGraph::Create(graph.root(), graph.instances(), std::move(edges), graph.metadata());
}

}  // namespace amrbench::analysis

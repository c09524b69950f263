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

// Graph-level computations over parsed AMR graphs.

#ifndef AMRBENCH_ANALYSIS_H_
#define AMRBENCH_ANALYSIS_H_

#include <string>
#include <vector>

#include "amrbench/penman.h"

namespace amrbench::analysis {

enum class TripleKind { kInstance, kRelation, kAttribute };

struct Triple {
  TripleKind kind;
  std::string relation;  // ":instance" for kInstance
  std::string source;    // variable
  std::string target;    // concept, variable, or constant lexeme (quotes kept)

  bool operator==(const Triple&) const = default;
  auto operator<=>(const Triple&) const = default;
};

inline constexpr const char* kInstanceRelation = ":instance";

struct TripleSet {
  std::vector<Triple> triples;
  // Variables in instance order; variable_count() == variables.size().
  std::vector<std::string> variables;

  std::size_t size() const { return triples.size(); }
  std::size_t variable_count() const { return variables.size(); }
};

// Instances first (document order), then one triple per edge. Inverse
// labels are kept as written.
TripleSet ExtractTriples(const penman::AmrGraph& graph);

// Longest root-to-leaf edge count along the nesting tree of the text.
// Re-entrant bare references and constants are leaves one edge below their
// source. Edges that do not belong to the nesting tree never extend a path
// past their target.
int Depth(const penman::AmrGraph& graph);

// Variables targeted by two or more edges, or by one edge while being the
// root. Instance order.
std::vector<std::string> Reentrancies(const penman::AmrGraph& graph);

struct InverseOptions {
  // Leave ":consist-of" and ":part-of" alone; they are surface labels, not
  // inverted ":consist" / ":part".
  bool keep_surface_of_labels = true;
};

bool IsInvertible(const std::string& label, const InverseOptions& options = {});

// Rewrites each invertible "X-of" edge (s, X-of, t) with a variable target
// as (t, X, s). Instances and metadata are unchanged; rewritten edges no
// longer nest their target.
penman::AmrGraph NormalizeInverse(const penman::AmrGraph& graph, const InverseOptions& options = {});

}  // namespace amrbench::analysis

#endif  // AMRBENCH_ANALYSIS_H_

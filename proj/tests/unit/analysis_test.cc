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
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "random_graphs.h"

namespace amrbench::analysis {
namespace {

using penman::AmrGraph;
using penman::EdgeTarget;
using testing::Graph;
using testing::FixtureCorpus;

AmrGraph MustParse(std::string_view text) {
  auto result = penman::Parse(text);
  if (!result.ok()) throw std::runtime_error(result.report.Describe());
  return *result.graph;
}

std::map<TripleKind, int> CountByKind(const TripleSet& set) {
  std::map<TripleKind, int> counts;
  for (const auto& t : set.triples) ++counts[t.kind];
  return counts;
}

TEST(ExtractTriples, WantGo) {
  auto set = ExtractTriples(MustParse(Graph("want_go")));
  const std::vector<Triple> expected = {
      {TripleKind::kInstance, ":instance", "w", "want-01"}, {TripleKind::kInstance, ":instance", "b", "boy"},
      {TripleKind::kInstance, ":instance", "g", "go-01"},   {TripleKind::kRelation, ":arg0", "w", "b"},
      {TripleKind::kRelation, ":arg1", "w", "g"},           {TripleKind::kRelation, ":arg0", "g", "b"}};
  EXPECT_EQ(set.triples, expected);
  EXPECT_EQ(set.variable_count(), 3u);
}

TEST(ExtractTriples, SingleNode) {
  auto set = ExtractTriples(MustParse("(b / boy)"));
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.triples[0], (Triple{TripleKind::kInstance, ":instance", "b", "boy"}));
}

// Independent count of the accelerate graph, node by node:
//   instances  a t s d a2 c w2 n a3 w o u                          = 12
//   relations  a:ARG0 t, a:ARG1 s, s:ARG0 t, s:ARG1 d, d:location a2,
//              a2:op1 c, c:location w2, w2:name n, a2:op2 a3,
//              a3:part-of w, a3:mod o, a:time u                    = 12
//   attributes w2:wiki, n:op1, n:op2                                = 3
TEST(ExtractTriples, AccelerateHandCount) {
  const AmrGraph g = MustParse(Graph("accelerate"));
  auto set = ExtractTriples(g);
  auto counts = CountByKind(set);
  EXPECT_EQ(counts[TripleKind::kInstance], 12);
  EXPECT_EQ(counts[TripleKind::kRelation], 12);
  EXPECT_EQ(counts[TripleKind::kAttribute], 3);
  EXPECT_EQ(set.size(), g.instances().size() + g.edges().size());
  EXPECT_NE(std::find(set.triples.begin(), set.triples.end(),
                      Triple{TripleKind::kAttribute, ":wiki", "w2", "\"Sub-Saharan_Africa\""}),
            set.triples.end());
}

TEST(ExtractTriples, ConservationOnFixtures) {
  for (const auto& e : FixtureCorpus()) {
    const AmrGraph g = MustParse(e.amr_text);
    auto set = ExtractTriples(g);
    EXPECT_EQ(set.size(), g.instances().size() + g.edges().size()) << e.id;
    EXPECT_EQ(set.variable_count(), g.instances().size()) << e.id;
  }
}

TEST(Depth, Examples) {
  EXPECT_EQ(Depth(MustParse("(b / boy)")), 0);
  EXPECT_EQ(Depth(MustParse(Graph("want_go"))), 2);
  EXPECT_EQ(Depth(MustParse(Graph("accelerate"))), 7);
  EXPECT_EQ(Depth(MustParse("(a / agree-01 :polarity -)")), 1);
}

TEST(Depth, BareReferencesAreLeaves) {
  // The reference to a deep node adds one edge below its source and never
  // continues through the referenced node's subtree.
  EXPECT_EQ(Depth(MustParse("(a / x :arg0 (b / y :arg0 (c / z :arg0 (d / w))) :arg1 b)")), 3);
  EXPECT_EQ(Depth(MustParse("(a / x :arg0 (b / y) :arg1 (c / z :arg0 (d / w :arg0 b)))")), 3);
}

TEST(DepthProperty, AddingFreshLeafNeverDecreasesDepth) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const AmrGraph g = testing::RandomGraph(rng);
    auto instances = g.instances();
    auto edges = g.edges();
    const std::string host = instances[rng() % instances.size()].variable;
    instances.push_back({"fresh", "leaf"});
    edges.push_back({host, ":mod", EdgeTarget::Variable("fresh"), true});
    const AmrGraph bigger = AmrGraph::Create(g.root(), instances, edges);
    EXPECT_GE(Depth(bigger), Depth(g));
  }
}

TEST(Reentrancies, Examples) {
  EXPECT_EQ(Reentrancies(MustParse(Graph("want_go"))), (std::vector<std::string>{"b"}));
  EXPECT_TRUE(Reentrancies(MustParse("(b / boy)")).empty());
  EXPECT_EQ(Reentrancies(MustParse(Graph("accelerate"))), (std::vector<std::string>{"t"}));
  // One incoming edge on the root is enough.
  EXPECT_EQ(Reentrancies(MustParse("(a / x :arg0 (b / y :arg1 a))")), (std::vector<std::string>{"a"}));
}

TEST(NormalizeInverse, BoySingGraph) {
  const AmrGraph g = NormalizeInverse(MustParse(Graph("boy_sing")));
  bool found = false;
  for (const auto& e : g.edges()) {
    if (e.source == "s" && e.label == ":arg0" && e.target == EdgeTarget::Variable("b")) found = true;
    EXPECT_NE(e.label, ":arg0-of");
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(g.root(), "b");
}

TEST(NormalizeInverse, IdentityWithoutInverseEdges) {
  const AmrGraph g = MustParse(Graph("want_go"));
  EXPECT_EQ(NormalizeInverse(g), g);
}

TEST(NormalizeInverse, SurfaceOfLabelsAreConfigurable) {
  const AmrGraph g = MustParse("(a / area :part-of (w / world) :consist-of (r / rock))");
  EXPECT_EQ(NormalizeInverse(g), g);
  InverseOptions strict;
  strict.keep_surface_of_labels = false;
  const AmrGraph n = NormalizeInverse(g, strict);
  EXPECT_EQ(n.edges()[0].source, "w");
  EXPECT_EQ(n.edges()[0].label, ":part");
  EXPECT_EQ(n.edges()[1].label, ":consist");
  EXPECT_TRUE(IsInvertible(":arg0-of"));
  EXPECT_FALSE(IsInvertible(":part-of"));
  EXPECT_TRUE(IsInvertible(":part-of", strict));
  EXPECT_FALSE(IsInvertible(":arg0"));
}

TEST(NormalizeInverseProperty, IdempotentAndConserving) {
  for (const auto& e : FixtureCorpus()) {
    const AmrGraph g = MustParse(e.amr_text);
    const AmrGraph once = NormalizeInverse(g);
    EXPECT_EQ(NormalizeInverse(once), once) << e.id;
    EXPECT_EQ(ExtractTriples(once).size(), ExtractTriples(g).size()) << e.id;
    EXPECT_EQ(once.instances(), g.instances()) << e.id;
  }
}

// The sing/boy graphs differ in focus only: after normalization their
// relation label multisets agree, while the raw ones do not.
TEST(NormalizeInverse, FocusEquivalenceOfSingBoyPair) {
  auto labels = [](const AmrGraph& g) {
    std::multiset<std::string> out;
    for (const auto& e : g.edges()) out.insert(e.label);
    return out;
  };
  const AmrGraph a = MustParse(Graph("sing_boy"));
  const AmrGraph b = MustParse(Graph("boy_sing"));
  EXPECT_NE(labels(a), labels(b));
  EXPECT_EQ(labels(NormalizeInverse(a)), labels(NormalizeInverse(b)));
}

}  // namespace
}  // namespace amrbench::analysis

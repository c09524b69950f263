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

#include "amrbench/smatch.h"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "amrbench/analysis.h"
#include "fixtures.h"
#include "oracles.h"
#include "random_graphs.h"

namespace amrbench::smatch {
namespace {

using analysis::TripleSet;
using penman::AmrGraph;
using testing::Graph;
using testing::NaiveBestMatch;
using testing::RandomPairs;

TripleSet Triples(std::string_view text) {
  auto result = penman::Parse(text);
  if (!result.ok()) throw std::runtime_error(result.report.Describe());
  return analysis::ExtractTriples(*result.graph);
}

TEST(VariableMapping, RejectsNonInjective) {
  EXPECT_THROW(VariableMapping({{"a", "x"}, {"b", "x"}}), std::invalid_argument);
  EXPECT_THROW(VariableMapping({{"a", "x"}, {"a", "y"}}), std::invalid_argument);
  VariableMapping m({{"b", "y"}, {"a", "x"}});
  EXPECT_EQ(m.pairs().front().first, "a");
  ASSERT_NE(m.Find("b"), nullptr);
  EXPECT_EQ(*m.Find("b"), "y");
  EXPECT_EQ(m.Find("c"), nullptr);
}

TEST(MakeResult, ZeroDenominators) {
  auto r = MakeResult({}, 0, 0, 0);
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f1, 0.0);
  auto s = MakeResult({}, 3, 4, 6);
  EXPECT_DOUBLE_EQ(s.precision, 0.75);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_DOUBLE_EQ(s.f1, 0.6);
}

TEST(MatchCount, WantGoAgainstFragment) {
  const auto gold = Triples(Graph("want_go"));
  const auto pred = Triples("(w / want-01 :arg0 (b / boy))");
  EXPECT_EQ(MatchCount(VariableMapping({{"w", "w"}, {"b", "b"}}), gold, pred), 3);
  EXPECT_EQ(MatchCount(VariableMapping({{"w", "b"}, {"b", "w"}}), gold, pred), 0);
  EXPECT_EQ(MatchCount(VariableMapping(), gold, pred), 0);
}

TEST(MatchCount, EachGoldTripleConsumedOnce) {
  const auto gold = Triples("(a / x :mod -)");
  const auto pred = Triples("(a / x :mod - :mod -)");
  EXPECT_EQ(MatchCount(VariableMapping(std::vector<std::pair<std::string, std::string>>{{"a", "a"}}), gold, pred), 2);
}

TEST(MatchCount, CaseAndQuotesAreIgnored) {
  const auto gold = Triples("(c / Country :name (n / name :op1 \"Africa\"))");
  const auto pred = Triples("(c / country :name (n / NAME :op1 Africa))");
  EXPECT_EQ(MatchCount(VariableMapping({{"c", "c"}, {"n", "n"}}), gold, pred), 4);
}

TEST(BruteForce, IdenticalWantGo) {
  const auto g = Triples(Graph("want_go"));
  auto r = BruteForceScore(g, g);
  EXPECT_EQ(r.matched, 6);
  EXPECT_EQ(r.f1, 1.0);
  EXPECT_TRUE(r.exact);
}

TEST(BruteForce, SingBoyPair) {
  auto r = BruteForceScore(Triples(Graph("sing_boy")), Triples(Graph("boy_sing")));
  EXPECT_EQ(r.matched, 4);
  EXPECT_EQ(r.predicted_total, 5);
  EXPECT_EQ(r.gold_total, 5);
  EXPECT_NEAR(r.f1, 0.8, 1e-12);
  EXPECT_NEAR(r.precision, 0.8, 1e-12);
  EXPECT_NEAR(r.recall, 0.8, 1e-12);
}

TEST(BruteForce, MappingReproducesScore) {
  for (const auto& p : RandomPairs(41, 60, 6)) {
    auto r = BruteForceScore(p.gold, p.pred);
    EXPECT_EQ(MatchCount(r.mapping, p.gold, p.pred), r.matched);
  }
}

TEST(BruteForce, AgreesWithNaiveEnumeration) {
  for (const auto& p : RandomPairs(7, 80, 5)) {
    EXPECT_EQ(BruteForceScore(p.gold, p.pred).matched, NaiveBestMatch(p.gold, p.pred));
  }
}

TEST(BruteForce, SizeLimit) {
  std::string big = "(v0 / x";
  for (int i = 1; i < 10; ++i) big += " :op" + std::to_string(i) + " (v" + std::to_string(i) + " / y)";
  big += ")";
  const auto g = Triples(big);
  EXPECT_THROW(BruteForceScore(g, g, 8), SizeError);
  EXPECT_NO_THROW(BruteForceScore(g, Triples("(a / x)"), 8));
}

TEST(HillClimb, SingBoyPair) {
  auto r = HillClimb(Triples(Graph("sing_boy")), Triples(Graph("boy_sing")), {4, 1});
  EXPECT_EQ(r.matched, 4);
  EXPECT_NEAR(r.f1, 0.8, 1e-12);
  EXPECT_FALSE(r.exact);
}

TEST(HillClimb, RejectsZeroRestarts) {
  const auto g = Triples("(a / x)");
  EXPECT_THROW(HillClimb(g, g, {0, 0}), std::invalid_argument);
}

TEST(HillClimb, NeverExceedsOracleAndUsuallyMatches) {
  const auto pairs = RandomPairs(2024, 200, 6);
  int equal = 0;
  for (const auto& p : pairs) {
    const int exact = BruteForceScore(p.gold, p.pred).matched;
    auto hc = HillClimb(p.gold, p.pred, {8, 99});
    EXPECT_LE(hc.matched, exact);
    EXPECT_EQ(MatchCount(hc.mapping, p.gold, p.pred), hc.matched);
    equal += hc.matched == exact ? 1 : 0;
  }
  EXPECT_GE(equal, 190);
}

TEST(HillClimb, DeterministicForSeed) {
  for (const auto& p : RandomPairs(5, 40, 6)) {
    auto a = HillClimb(p.gold, p.pred, {4, 17});
    auto b = HillClimb(p.gold, p.pred, {4, 17});
    EXPECT_EQ(a.matched, b.matched);
    EXPECT_EQ(a.mapping, b.mapping);
  }
}

TEST(HillClimbProperty, MoreRestartsNeverScoreLower) {
  for (const auto& p : RandomPairs(77, 100, 6)) {
    int previous = -1;
    for (int k = 1; k <= 8; ++k) {
      const int matched = HillClimb(p.gold, p.pred, {k, 3}).matched;
      EXPECT_GE(matched, previous);
      previous = matched;
    }
  }
}

TEST(ScoreProperty, SwapSymmetry) {
  for (const auto& p : RandomPairs(13, 60, 6)) {
    auto ab = BruteForceScore(p.gold, p.pred);
    auto ba = BruteForceScore(p.pred, p.gold);
    EXPECT_EQ(ab.matched, ba.matched);
    EXPECT_DOUBLE_EQ(ab.f1, ba.f1);
    EXPECT_DOUBLE_EQ(ab.precision, ba.recall);
  }
}

TEST(ScoreProperty, RenamingInvariance) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 60; ++i) {
    const AmrGraph g = testing::RandomGraph(rng);
    const AmrGraph p = testing::Perturb(testing::RandomGraph(rng), rng);
    const auto gt = analysis::ExtractTriples(g);
    const int base = BruteForceScore(gt, analysis::ExtractTriples(p)).matched;
    EXPECT_EQ(BruteForceScore(gt, analysis::ExtractTriples(testing::RenameVariables(p, rng))).matched, base);
    EXPECT_EQ(BruteForceScore(analysis::ExtractTriples(testing::RenameVariables(g, rng)), analysis::ExtractTriples(p))
                  .matched,
              base);
  }
}

TEST(ScorePair, SelfScoreOnFixtures) {
  ScoreConfig config;
  for (const auto& e : testing::FixtureCorpus()) {
    auto outcome = ScorePair(e.amr_text, e.amr_text, config, e.id);
    ASSERT_TRUE(std::holds_alternative<MappingResult>(outcome)) << e.id;
    EXPECT_EQ(std::get<MappingResult>(outcome).f1, 1.0) << e.id;
  }
}

TEST(ScorePair, SelfScoreViaHillClimbOnFixtures) {
  ScoreConfig config;
  config.exact_threshold = 0;
  for (const auto& e : testing::FixtureCorpus()) {
    auto r = std::get<MappingResult>(ScorePair(e.amr_text, e.amr_text, config, e.id));
    EXPECT_EQ(r.f1, 1.0) << e.id;
    EXPECT_FALSE(r.exact);
  }
}

TEST(ScorePair, InvalidPredictionYieldsReport) {
  auto outcome = ScorePair(Graph("want_go"), "(b / boy", {});
  ASSERT_TRUE(std::holds_alternative<penman::StructuralReport>(outcome));
  EXPECT_EQ(std::get<penman::StructuralReport>(outcome).Kinds(),
            (std::vector<penman::ErrorKind>{penman::ErrorKind::kUnbalancedParens}));
}

TEST(ScorePair, InvalidGoldIsIntegrityError) {
  try {
    ScorePair("(b / boy", "(b / boy)", {}, "entry-7");
    FAIL() << "expected CorpusIntegrityError";
  } catch (const CorpusIntegrityError& e) {
    EXPECT_EQ(e.entry_id(), "entry-7");
  }
}

TEST(ScorePair, RouteFollowsThreshold) {
  const std::string a = Graph("sing_boy"), b = Graph("boy_sing");
  ScoreConfig exact;
  auto r1 = std::get<MappingResult>(ScorePair(a, b, exact));
  EXPECT_TRUE(r1.exact);
  ScoreConfig climb;
  climb.exact_threshold = 2;
  auto r2 = std::get<MappingResult>(ScorePair(a, b, climb));
  EXPECT_FALSE(r2.exact);
  EXPECT_EQ(r1.matched, r2.matched);
}

TEST(DerivePairSeed, StableAndIdSensitive) {
  EXPECT_EQ(DerivePairSeed(42, "a.1"), DerivePairSeed(42, "a.1"));
  EXPECT_NE(DerivePairSeed(42, "a.1"), DerivePairSeed(42, "a.2"));
  EXPECT_NE(DerivePairSeed(42, "a.1"), DerivePairSeed(43, "a.1"));
}

}  // namespace
}  // namespace amrbench::smatch

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

#include "amrbench/evaluator.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "amrbench/analysis.h"
#include "fixtures.h"
#include "random_graphs.h"

namespace amrbench::evaluator {
namespace {

using extraction::TemplateFamily;
using testing::FixtureCorpus;

// Independent interval oracle: two-pass sample deviation and the
// two-decimal normal quantile used in reporting.
double OracleHalfWidth(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return 1.96 * sd / std::sqrt(static_cast<double>(xs.size()));
}

Predictions Identity(const std::vector<corpus::CorpusEntry>& gold) {
  Predictions p;
  for (const auto& e : gold) p[e.id] = e.amr_text;
  return p;
}

EvalConfig Config(int workers = 1) {
  EvalConfig c;
  c.scoring.seed = 7;
  c.workers = workers;
  return c;
}

corpus::CorpusEntry Entry(std::string id, std::string amr) {
  corpus::CorpusEntry e;
  e.id = std::move(id);
  e.sentence = "s";
  e.amr_text = std::move(amr);
  e.depth = analysis::Depth(*penman::Parse(e.amr_text).graph);
  return e;
}

const SummaryRow& Row(const std::vector<SummaryRow>& rows, const std::string& metric) {
  auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.metric == metric; });
  if (it == rows.end()) throw std::out_of_range(metric);
  return *it;
}

TEST(Evaluate, IdentityScoresOne) {
  const auto& gold = FixtureCorpus();
  auto records = Evaluate(gold, Identity(gold), TemplateFamily::kPlain, Config());
  ASSERT_EQ(records.size(), gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    EXPECT_EQ(records[i].entry_id, gold[i].id);
    ASSERT_TRUE(records[i].score) << gold[i].id;
    EXPECT_DOUBLE_EQ(records[i].score->f1, 1.0) << gold[i].id;
  }
  auto rows = Summarize(AggregateByDepth(records));
  EXPECT_DOUBLE_EQ(Row(rows, "F1").mean, 1.0);
  EXPECT_DOUBLE_EQ(Row(rows, "Precision").mean, 1.0);
  EXPECT_DOUBLE_EQ(Row(rows, "Recall").mean, 1.0);
  EXPECT_DOUBLE_EQ(Row(rows, "MeanErrorCount").mean, 0.0);
  EXPECT_NEAR(*Row(rows, "F1").ci_half_width, 0.0, 1e-12);
}

TEST(Evaluate, TruncatedGenerationIsAnError) {
  std::vector<corpus::CorpusEntry> gold = {Entry("a.1", "(b / boy)")};
  auto records = Evaluate(gold, {{"a.1", "(b / boy"}}, TemplateFamily::kPlain, Config());
  ASSERT_EQ(records.size(), 1u);
  EXPECT_FALSE(records[0].score);
  EXPECT_FALSE(records[0].structural.valid());
  EXPECT_EQ(records[0].raw_length, 8u);
  auto agg = AggregateByDepth(records);
  EXPECT_EQ(agg[0].error_count, 1);
  EXPECT_EQ(agg[0].scored, 0);
  EXPECT_EQ(agg[0].mean_f1, 0.0);
}

TEST(Evaluate, InvalidGoldIsAnIntegrityFailure) {
  corpus::CorpusEntry bad;
  bad.id = "g.1";
  bad.amr_text = "(b / boy";
  EXPECT_THROW(Evaluate({bad}, {{"g.1", "(b / boy)"}}, TemplateFamily::kPlain, Config()),
               smatch::CorpusIntegrityError);
}

TEST(Evaluate, MissingPredictionsAreNamed) {
  const auto& gold = FixtureCorpus();
  Predictions p = Identity(gold);
  p.erase(gold[3].id);
  p.erase(gold[10].id);
  try {
    Evaluate(gold, p, TemplateFamily::kPlain, Config());
    FAIL();
  } catch (const MissingPredictionsError& e) {
    ASSERT_EQ(e.ids().size(), 2u);
    EXPECT_NE(std::find(e.ids().begin(), e.ids().end(), gold[3].id), e.ids().end());
  }
}

// Perturbed predictions on small graphs go through the exact route; every
// record must equal the exhaustive score of the pair.
TEST(Evaluate, PerturbedPredictionsMatchExactScore) {
  std::mt19937_64 rng(11);
  std::vector<corpus::CorpusEntry> gold;
  Predictions p;
  for (int i = 0; i < 60; ++i) {
    auto g = testing::RandomGraph(rng);
    auto e = Entry("r." + std::to_string(i), penman::Serialize(g));
    p[e.id] = penman::Serialize(testing::Perturb(g, rng));
    gold.push_back(std::move(e));
  }
  auto records = Evaluate(gold, p, TemplateFamily::kPlain, Config());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto gt = analysis::ExtractTriples(*penman::Parse(gold[i].amr_text).graph);
    const auto pt = analysis::ExtractTriples(*penman::Parse(p[gold[i].id]).graph);
    ASSERT_TRUE(records[i].score);
    EXPECT_TRUE(records[i].score->exact);
    EXPECT_EQ(records[i].score->matched, smatch::BruteForceScore(gt, pt).matched) << gold[i].id;
  }
}

TEST(Evaluate, IndependentOfWorkerCountAndOrder) {
  std::mt19937_64 rng(5);
  auto gold = FixtureCorpus();
  Predictions p;
  for (const auto& e : gold) p[e.id] = penman::Serialize(testing::Perturb(*penman::Parse(e.amr_text).graph, rng));
  EvalConfig heuristic = Config(1);
  heuristic.scoring.exact_threshold = 0;
  auto one = Evaluate(gold, p, TemplateFamily::kPlain, heuristic);
  heuristic.workers = 4;
  auto four = Evaluate(gold, p, TemplateFamily::kPlain, heuristic);
  auto shuffled = gold;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  auto reordered = Evaluate(shuffled, p, TemplateFamily::kPlain, heuristic);
  std::map<std::string, double> by_id;
  for (const auto& r : reordered) by_id[r.entry_id] = r.score->f1;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    EXPECT_EQ(one[i].score->f1, four[i].score->f1);
    EXPECT_EQ(one[i].score->f1, by_id.at(one[i].entry_id));
  }
  auto a = Summarize(AggregateByDepth(one));
  auto b = Summarize(AggregateByDepth(reordered));
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].mean, b[i].mean);
}

TEST(Evaluate, ErrorCountOverFiveHundred) {
  std::vector<corpus::CorpusEntry> gold;
  Predictions p;
  for (int i = 0; i < 500; ++i) {
    gold.push_back(Entry("n." + std::to_string(i), "(w / want-01 :ARG0 (b / boy))"));
    p[gold.back().id] = i < 466 ? "(w / want-01 :ARG0 (b / boy))" : "(w / want-01 :ARG0 (b / boy)";
  }
  auto agg = AggregateByDepth(Evaluate(gold, p, TemplateFamily::kPlain, Config()));
  ASSERT_EQ(agg.size(), 1u);
  EXPECT_EQ(agg[0].n, 500);
  EXPECT_EQ(agg[0].error_count, 34);
  EXPECT_EQ(agg[0].scored, 466);
}

TEST(Evaluate, ZeroModeFoldsErrorsIntoMeans) {
  std::vector<corpus::CorpusEntry> gold = {Entry("a", "(b / boy)"), Entry("b", "(g / girl)")};
  Predictions p = {{"a", "(b / boy)"}, {"b", "("}};
  auto records = Evaluate(gold, p, TemplateFamily::kPlain, Config());
  EXPECT_DOUBLE_EQ(AggregateByDepth(records, InvalidHandling::kExclude)[0].mean_f1, 1.0);
  auto zero = AggregateByDepth(records, InvalidHandling::kScoreAsZero);
  EXPECT_DOUBLE_EQ(zero[0].mean_f1, 0.5);
  EXPECT_EQ(zero[0].scored, 2);
  EXPECT_EQ(zero[0].error_count, 1);
}

TEST(ConfidenceInterval, Examples) {
  std::vector<double> flat = {0.8, 0.8, 0.8};
  auto ci = ComputeConfidenceInterval(flat);
  EXPECT_NEAR(ci.mean, 0.8, 1e-12);
  EXPECT_NEAR(ci.half_width, 0.0, 1e-12);
  std::vector<double> two = {0.7, 0.9};
  ci = ComputeConfidenceInterval(two);
  EXPECT_NEAR(ci.mean, 0.8, 1e-12);
  EXPECT_NEAR(ci.half_width, 0.196, 1e-3);
  std::vector<double> one = {0.5};
  EXPECT_THROW(ComputeConfidenceInterval(one), std::domain_error);
  EXPECT_THROW(ComputeConfidenceInterval(two, 0.5), std::invalid_argument);
}

TEST(ConfidenceInterval, MatchesOracleOnRandomSamples) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> xs(2 + rng() % 40);
    for (double& x : xs) x = u(rng);
    EXPECT_NEAR(ComputeConfidenceInterval(xs).half_width, OracleHalfWidth(xs), 1e-12);
  }
}

TEST(ConfidenceInterval, PermutationInvariant) {
  std::mt19937_64 rng(8);
  std::vector<double> xs = {0.1, 0.5, 0.93, 0.44, 0.2, 0.7, 0.66};
  const auto base = ComputeConfidenceInterval(xs);
  for (int t = 0; t < 50; ++t) {
    std::shuffle(xs.begin(), xs.end(), rng);
    auto ci = ComputeConfidenceInterval(xs);
    EXPECT_NEAR(ci.mean, base.mean, 1e-15);
    EXPECT_NEAR(ci.half_width, base.half_width, 1e-15);
  }
}

TEST(Summarize, MeanErrorCountAcrossDepths) {
  std::vector<DepthAggregate> agg;
  const int errors[] = {0, 0, 1, 0, 0, 2, 0, 0, 0, 0};
  for (int d = 1; d <= 10; ++d) {
    DepthAggregate a;
    a.depth = d;
    a.n = 30;
    a.error_count = errors[d - 1];
    a.scored = a.n - a.error_count;
    a.mean_f1 = a.mean_precision = a.mean_recall = 1.0 - 0.05 * d;
    agg.push_back(a);
  }
  auto rows = Summarize(agg);
  EXPECT_NEAR(Row(rows, "MeanErrorCount").mean, 0.3, 1e-12);
  EXPECT_FALSE(Row(rows, "MeanErrorCount").ci_half_width);
  std::vector<double> f1;
  for (const auto& a : agg) f1.push_back(a.mean_f1);
  EXPECT_NEAR(*Row(rows, "F1").ci_half_width, OracleHalfWidth(f1), 1e-12);
  EXPECT_THROW(Summarize(std::span(agg).first(1)), std::domain_error);
}

TEST(Summarize, DepthsWithoutScoresAreSkippedForMeans) {
  std::vector<DepthAggregate> agg(3);
  for (int i = 0; i < 3; ++i) {
    agg[i].depth = i;
    agg[i].n = 2;
    agg[i].scored = i == 1 ? 0 : 2;
    agg[i].error_count = i == 1 ? 2 : 0;
    agg[i].mean_f1 = i == 1 ? 0.0 : 0.6;
  }
  auto rows = Summarize(agg);
  EXPECT_NEAR(Row(rows, "F1").mean, 0.6, 1e-12);
  EXPECT_NEAR(Row(rows, "MeanErrorCount").mean, 2.0 / 3.0, 1e-12);
}

TEST(SummarizeBySubset, SplitsFixtureSubsets) {
  const auto& gold = FixtureCorpus();
  auto records = Evaluate(gold, Identity(gold), TemplateFamily::kPlain, Config());
  auto subsets = SummarizeBySubset(records);
  ASSERT_EQ(subsets.size(), 6u);
  EXPECT_TRUE(std::is_sorted(subsets.begin(), subsets.end(),
                             [](const auto& a, const auto& b) { return a.subset < b.subset; }));
  for (const auto& s : subsets) EXPECT_DOUBLE_EQ(Row(s.rows, "F1").mean, 1.0) << s.subset;
}

TEST(ReadPredictions, RoundTripAndFailures) {
  std::ostringstream out;
  WritePrediction(out, "a", "line\n\"quoted\"");
  WritePrediction(out, "b", "");
  out << "\n{\"id\": \"c\", \"raw\": \"partial\", \"failed\": true}\n";
  std::istringstream in(out.str());
  auto p = ReadPredictions(in);
  EXPECT_EQ(p.at("a"), "line\n\"quoted\"");
  EXPECT_EQ(p.at("b"), "");
  EXPECT_EQ(p.at("c"), "partial");
}

TEST(ReadPredictions, MalformedLinesAreNamed) {
  auto expect_line = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      ReadPredictions(in);
      FAIL() << text;
    } catch (const std::runtime_error& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_line("{\"id\": \"a\", \"raw\": \"x\"}\nnot json\n", "2");
  expect_line("{\"raw\": \"x\"}\n", "1");
  expect_line("{\"id\": \"a\", \"raw\": \"x\"}\n{\"id\": \"a\", \"raw\": \"y\"}\n", "a");
}

TEST(Names, RoundTrip) {
  for (auto m : {InvalidHandling::kExclude, InvalidHandling::kScoreAsZero})
    EXPECT_EQ(ParseInvalidHandling(InvalidHandlingName(m)), m);
  for (auto m : {CiMode::kPerDepth, CiMode::kPerSentence}) EXPECT_EQ(ParseCiMode(CiModeName(m)), m);
  EXPECT_FALSE(ParseCiMode("bogus"));
}

}  // namespace
}  // namespace amrbench::evaluator

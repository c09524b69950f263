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
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "amrbench/random.h"
#include "amrbench/text.h"

namespace amrbench::smatch {

using analysis::Triple;
using analysis::TripleKind;
using analysis::TripleSet;

namespace {

// Comparison form of a triple's non-variable target.
std::string NormalizeValue(const Triple& t) {
  std::string_view value = t.target;
  if (t.kind == TripleKind::kAttribute && value.size() >= 2 && value.front() == '"' && value.back() == '"') {
    value = value.substr(1, value.size() - 2);
  }
  return text::ToLower(value);
}

char KindTag(TripleKind kind) {
  switch (kind) {
    case TripleKind::kInstance: return 'I';
    case TripleKind::kRelation: return 'R';
    case TripleKind::kAttribute: return 'A';
  }
  return '?';
}

// Key of a triple once its variables have been renamed to `source` and, for
// relation triples, `target`.
std::string TripleKey(const Triple& t, std::string_view source, std::string_view target) {
  std::string key;
  key.reserve(t.relation.size() + source.size() + target.size() + 8);
  key += KindTag(t.kind);
  key += '\x1f';
  key += text::ToLower(t.relation);
  key += '\x1f';
  key += source;
  key += '\x1f';
  if (t.kind == TripleKind::kRelation) {
    key += target;
  } else {
    key += NormalizeValue(t);
  }
  return key;
}

}  // namespace

VariableMapping::VariableMapping(std::vector<std::pair<std::string, std::string>> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  std::unordered_set<std::string> images;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i > 0 && pairs_[i].first == pairs_[i - 1].first) {
      throw std::invalid_argument("variable '" + pairs_[i].first + "' mapped twice");
    }
    if (!images.insert(pairs_[i].second).second) {
      throw std::invalid_argument("mapping is not injective on '" + pairs_[i].second + "'");
    }
  }
}

const std::string* VariableMapping::Find(std::string_view predicted) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), predicted,
                             [](const auto& pair, std::string_view key) { return pair.first < key; });
  if (it == pairs_.end() || it->first != predicted) return nullptr;
  return &it->second;
}

MappingResult MakeResult(VariableMapping mapping, int matched, int predicted_total, int gold_total) {
  MappingResult r;
  r.mapping = std::move(mapping);
  r.matched = matched;
  r.predicted_total = predicted_total;
  r.gold_total = gold_total;
  r.precision = predicted_total > 0 ? static_cast<double>(matched) / predicted_total : 0.0;
  r.recall = gold_total > 0 ? static_cast<double>(matched) / gold_total : 0.0;
  r.f1 = r.precision + r.recall > 0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

int MatchCount(const VariableMapping& mapping, const TripleSet& gold, const TripleSet& predicted) {
  std::unordered_map<std::string, int> available;
  for (const auto& t : gold.triples) ++available[TripleKey(t, t.source, t.target)];

  int matched = 0;
  for (const auto& t : predicted.triples) {
    const std::string* source = mapping.Find(t.source);
    if (source == nullptr) continue;
    std::string_view target;
    if (t.kind == TripleKind::kRelation) {
      const std::string* mapped = mapping.Find(t.target);
      if (mapped == nullptr) continue;
      target = *mapped;
    }
    auto it = available.find(TripleKey(t, *source, target));
    if (it != available.end() && it->second > 0) {
      --it->second;
      ++matched;
    }
  }
  return matched;
}

namespace {

std::map<std::string, std::string> ConceptsByVariable(const TripleSet& set) {
  std::map<std::string, std::string> concepts;
  for (const auto& t : set.triples) {
    if (t.kind == TripleKind::kInstance) concepts.emplace(t.source, text::ToLower(t.target));
  }
  return concepts;
}

}  // namespace

VariableMapping GreedyConceptMapping(const TripleSet& gold, const TripleSet& predicted) {
  const auto gold_concepts = ConceptsByVariable(gold);
  const auto pred_concepts = ConceptsByVariable(predicted);
  std::unordered_set<std::string> used;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [pred_var, pred_concept] : pred_concepts) {
    for (const auto& [gold_var, gold_concept] : gold_concepts) {
      if (gold_concept == pred_concept && !used.count(gold_var)) {
        used.insert(gold_var);
        pairs.emplace_back(pred_var, gold_var);
        break;
      }
    }
  }
  return VariableMapping(std::move(pairs));
}

namespace {

constexpr int kUnmapped = -1;

// Match weights between variable-index assignments, so that the score of a
// mapping is a sum of per-variable and per-variable-pair terms.
class WeightTables {
 public:
  WeightTables(const TripleSet& gold, const TripleSet& predicted)
      : gold_vars_(gold.variables), pred_vars_(predicted.variables) {
    const auto gold_index = Index(gold.variables);
    const auto pred_index = Index(predicted.variables);
    const std::size_t m = pred_vars_.size();
    const std::size_t n = gold_vars_.size();

    // Single-variable triples (instances, attributes) keyed without source.
    std::vector<std::unordered_map<std::string, int>> pred_unary(m), gold_unary(n);
    for (const auto& t : predicted.triples) {
      if (t.kind != TripleKind::kRelation) ++pred_unary[pred_index.at(t.source)][TripleKey(t, "", "")];
    }
    for (const auto& t : gold.triples) {
      if (t.kind != TripleKind::kRelation) ++gold_unary[gold_index.at(t.source)][TripleKey(t, "", "")];
    }
    unary_.assign(m, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        int w = 0;
        for (const auto& [key, count] : pred_unary[i]) {
          auto it = gold_unary[j].find(key);
          if (it != gold_unary[j].end()) w += std::min(count, it->second);
        }
        unary_[i][j] = w;
      }
    }

    // Relation triples grouped by variable pair, then by label.
    std::map<std::pair<int, int>, std::map<std::string, int>> pred_pairs;
    std::map<std::pair<int, int>, std::map<std::string, int>> gold_pairs;
    for (const auto& t : predicted.triples) {
      if (t.kind == TripleKind::kRelation) {
        ++pred_pairs[{pred_index.at(t.source), pred_index.at(t.target)}][text::ToLower(t.relation)];
      }
    }
    for (const auto& t : gold.triples) {
      if (t.kind == TripleKind::kRelation) {
        ++gold_pairs[{gold_index.at(t.source), gold_index.at(t.target)}][text::ToLower(t.relation)];
      }
    }
    incident_.assign(m, {});
    for (const auto& [vars, labels] : pred_pairs) {
      Pair pair{vars.first, vars.second, {}};
      for (const auto& [gvars, glabels] : gold_pairs) {
        // A self-loop can only match a self-loop.
        if ((vars.first == vars.second) != (gvars.first == gvars.second)) continue;
        int w = 0;
        for (const auto& [label, count] : labels) {
          auto it = glabels.find(label);
          if (it != glabels.end()) w += std::min(count, it->second);
        }
        if (w > 0) pair.weights.emplace(Key(gvars.first, gvars.second), w);
      }
      const std::size_t idx = pairs_.size();
      pairs_.push_back(std::move(pair));
      incident_[vars.first].push_back(idx);
      if (vars.second != vars.first) incident_[vars.second].push_back(idx);
    }
  }

  std::size_t pred_count() const { return pred_vars_.size(); }
  std::size_t gold_count() const { return gold_vars_.size(); }

  int Score(const std::vector<int>& mapping) const {
    int total = 0;
    for (std::size_t i = 0; i < mapping.size(); ++i) {
      if (mapping[i] != kUnmapped) total += unary_[i][static_cast<std::size_t>(mapping[i])];
    }
    for (const auto& pair : pairs_) total += PairWeight(pair, mapping);
    return total;
  }

  // Score contribution of every term that touches variable `a` or `b`.
  int LocalScore(const std::vector<int>& mapping, int a, int b = kUnmapped) const {
    int total = UnaryOf(mapping, a);
    for (std::size_t p : incident_[static_cast<std::size_t>(a)]) total += PairWeight(pairs_[p], mapping);
    if (b == kUnmapped) return total;
    total += UnaryOf(mapping, b);
    for (std::size_t p : incident_[static_cast<std::size_t>(b)]) {
      if (pairs_[p].first == a || pairs_[p].second == a) continue;
      total += PairWeight(pairs_[p], mapping);
    }
    return total;
  }

  VariableMapping ToMapping(const std::vector<int>& mapping) const {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < mapping.size(); ++i) {
      if (mapping[i] != kUnmapped) pairs.emplace_back(pred_vars_[i], gold_vars_[static_cast<std::size_t>(mapping[i])]);
    }
    return VariableMapping(std::move(pairs));
  }

  std::vector<int> FromMapping(const VariableMapping& mapping) const {
    const auto gold_index = Index(gold_vars_);
    std::vector<int> out(pred_vars_.size(), kUnmapped);
    for (std::size_t i = 0; i < pred_vars_.size(); ++i) {
      if (const std::string* g = mapping.Find(pred_vars_[i])) out[i] = static_cast<int>(gold_index.at(*g));
    }
    return out;
  }

 private:
  struct Pair {
    int first;
    int second;
    std::unordered_map<std::uint64_t, int> weights;  // gold (j1, j2) -> matches
  };

  static std::uint64_t Key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }

  static std::unordered_map<std::string, std::size_t> Index(const std::vector<std::string>& vars) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vars.size(); ++i) index.emplace(vars[i], i);
    return index;
  }

  int UnaryOf(const std::vector<int>& mapping, int v) const {
    const int g = mapping[static_cast<std::size_t>(v)];
    return g == kUnmapped ? 0 : unary_[static_cast<std::size_t>(v)][static_cast<std::size_t>(g)];
  }

  static int PairWeight(const Pair& pair, const std::vector<int>& mapping) {
    const int a = mapping[static_cast<std::size_t>(pair.first)];
    const int b = mapping[static_cast<std::size_t>(pair.second)];
    if (a == kUnmapped || b == kUnmapped) return 0;
    auto it = pair.weights.find(Key(a, b));
    return it == pair.weights.end() ? 0 : it->second;
  }

  std::vector<std::string> gold_vars_;
  std::vector<std::string> pred_vars_;
  std::vector<std::vector<int>> unary_;
  std::vector<Pair> pairs_;
  std::vector<std::vector<std::size_t>> incident_;
};

// Steepest ascent from `mapping` until no move improves the score.
int Climb(const WeightTables& tables, std::vector<int>& mapping) {
  const int m = static_cast<int>(tables.pred_count());
  const int n = static_cast<int>(tables.gold_count());
  std::vector<int> owner(static_cast<std::size_t>(n), kUnmapped);
  for (int i = 0; i < m; ++i) {
    if (mapping[static_cast<std::size_t>(i)] != kUnmapped) owner[static_cast<std::size_t>(mapping[static_cast<std::size_t>(i)])] = i;
  }
  int score = tables.Score(mapping);

  for (;;) {
    int best_delta = 0;
    enum class Move { kNone, kRemap, kSwap } best_move = Move::kNone;
    int best_a = 0;
    int best_b = 0;

    for (int i = 0; i < m; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const int current = mapping[ii];
      const int before = tables.LocalScore(mapping, i);
      // Remap to a free gold variable, or to unmapped (j == n).
      for (int j = 0; j <= n; ++j) {
        const int target = j == n ? kUnmapped : j;
        if (target == current) continue;
        if (target != kUnmapped && owner[static_cast<std::size_t>(target)] != kUnmapped) continue;
        mapping[ii] = target;
        const int delta = tables.LocalScore(mapping, i) - before;
        mapping[ii] = current;
        if (delta > best_delta) {
          best_delta = delta;
          best_move = Move::kRemap;
          best_a = i;
          best_b = target;
        }
      }
    }
    for (int i = 0; i < m; ++i) {
      for (int k = i + 1; k < m; ++k) {
        const auto ii = static_cast<std::size_t>(i);
        const auto kk = static_cast<std::size_t>(k);
        if (mapping[ii] == mapping[kk]) continue;  // both unmapped
        const int before = tables.LocalScore(mapping, i, k);
        std::swap(mapping[ii], mapping[kk]);
        const int delta = tables.LocalScore(mapping, i, k) - before;
        std::swap(mapping[ii], mapping[kk]);
        if (delta > best_delta) {
          best_delta = delta;
          best_move = Move::kSwap;
          best_a = i;
          best_b = k;
        }
      }
    }

    if (best_move == Move::kNone) break;
    const auto a = static_cast<std::size_t>(best_a);
    if (best_move == Move::kRemap) {
      if (mapping[a] != kUnmapped) owner[static_cast<std::size_t>(mapping[a])] = kUnmapped;
      mapping[a] = best_b;
      if (best_b != kUnmapped) owner[static_cast<std::size_t>(best_b)] = best_a;
    } else {
      const auto b = static_cast<std::size_t>(best_b);
      std::swap(mapping[a], mapping[b]);
      if (mapping[a] != kUnmapped) owner[static_cast<std::size_t>(mapping[a])] = best_a;
      if (mapping[b] != kUnmapped) owner[static_cast<std::size_t>(mapping[b])] = best_b;
    }
    score += best_delta;
  }
  return score;
}

// Uniform over injections that map as many predicted variables as possible.
std::vector<int> RandomInjection(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  std::vector<int> slots(std::max(m, n), kUnmapped);
  std::iota(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(n), 0);
  for (std::size_t i = slots.size(); i > 1; --i) std::swap(slots[i - 1], slots[UniformIndex(rng, i)]);
  slots.resize(m);
  return slots;
}

}  // namespace

MappingResult HillClimb(const TripleSet& gold, const TripleSet& predicted, const HillClimbOptions& options) {
  if (options.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const int pred_total = static_cast<int>(predicted.size());
  const int gold_total = static_cast<int>(gold.size());
  const int ceiling = std::min(pred_total, gold_total);

  const WeightTables tables(gold, predicted);
  std::mt19937_64 rng(options.seed);

  std::vector<int> best_mapping(tables.pred_count(), kUnmapped);
  int best = -1;
  int used = 0;
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<int> mapping = r == 0 ? tables.FromMapping(GreedyConceptMapping(gold, predicted))
                                      : RandomInjection(tables.pred_count(), tables.gold_count(), rng);
    const int score = Climb(tables, mapping);
    ++used;
    if (score > best) {
      best = score;
      best_mapping = std::move(mapping);
    }
    if (best >= ceiling) break;
  }
  MappingResult result = MakeResult(tables.ToMapping(best_mapping), std::max(best, 0), pred_total, gold_total);
  result.restarts_used = used;
  return result;
}

namespace {

// Exhaustive search over injections of the smaller variable set into the
// larger one, with an optimistic bound on the triples still undecided.
// Mapping a variable never lowers the count, so full injections suffice.
class ExactSearch {
 public:
  ExactSearch(const TripleSet& from, const TripleSet& to) : from_vars_(from.variables), to_vars_(to.variables) {
    for (const auto& t : to.triples) ++to_keys_[TripleKey(t, t.source, t.target)];

    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < from_vars_.size(); ++i) position.emplace(from_vars_[i], i);

    // Group identical triples; each group completes once its last variable
    // is assigned.
    std::map<std::string, Group> groups;
    for (const auto& t : from.triples) {
      auto& g = groups[TripleKey(t, t.source, t.target)];
      if (g.count++ == 0) {
        g.triple = &t;
        std::size_t last = position.at(t.source);
        if (t.kind == TripleKind::kRelation) last = std::max(last, position.at(t.target));
        g.completes_at = last;
      }
    }
    completing_.assign(from_vars_.size(), {});
    for (auto& [key, g] : groups) completing_[g.completes_at].push_back(g);
    remaining_after_.assign(from_vars_.size() + 1, 0);
    for (std::size_t i = from_vars_.size(); i-- > 0;) {
      int sum = 0;
      for (const auto& g : completing_[i]) sum += g.count;
      remaining_after_[i] = remaining_after_[i + 1] + sum;
    }
    assignment_.assign(from_vars_.size(), 0);
    used_.assign(to_vars_.size(), false);
  }

  int Run(int ceiling) {
    ceiling_ = ceiling;
    Search(0, 0);
    return best_;
  }

  const std::vector<std::size_t>& best_assignment() const { return best_assignment_; }

 private:
  struct Group {
    const Triple* triple = nullptr;
    int count = 0;
    std::size_t completes_at = 0;
  };

  int Gain(std::size_t depth) const {
    int gain = 0;
    for (const auto& g : completing_[depth]) {
      const Triple& t = *g.triple;
      const std::string& source = Image(t.source);
      const std::string& target = t.kind == TripleKind::kRelation ? Image(t.target) : t.target;
      auto it = to_keys_.find(TripleKey(t, source, target));
      if (it != to_keys_.end()) gain += std::min(g.count, it->second);
    }
    return gain;
  }

  const std::string& Image(const std::string& from_var) const {
    for (std::size_t i = 0; i < from_vars_.size(); ++i) {
      if (from_vars_[i] == from_var) return to_vars_[assignment_[i]];
    }
    return from_var;  // unreachable for well-formed sets
  }

  void Search(std::size_t depth, int score) {
    if (best_ >= ceiling_) return;
    if (depth == from_vars_.size()) {
      if (score > best_) {
        best_ = score;
        best_assignment_ = assignment_;
      }
      return;
    }
    if (score + remaining_after_[depth] <= best_) return;
    for (std::size_t j = 0; j < to_vars_.size(); ++j) {
      if (used_[j]) continue;
      used_[j] = true;
      assignment_[depth] = j;
      Search(depth + 1, score + Gain(depth));
      used_[j] = false;
    }
  }

  std::vector<std::string> from_vars_;
  std::vector<std::string> to_vars_;
  std::unordered_map<std::string, int> to_keys_;
  std::vector<std::vector<Group>> completing_;
  std::vector<int> remaining_after_;
  std::vector<std::size_t> assignment_;
  std::vector<bool> used_;
  std::vector<std::size_t> best_assignment_;
  int best_ = -1;
  int ceiling_ = 0;
};

}  // namespace

MappingResult BruteForceScore(const TripleSet& gold, const TripleSet& predicted, int max_variables) {
  const std::size_t gold_vars = gold.variable_count();
  const std::size_t pred_vars = predicted.variable_count();
  if (std::min(gold_vars, pred_vars) > static_cast<std::size_t>(max_variables)) {
    throw SizeError("exact scoring limited to " + std::to_string(max_variables) + " variables; gold has " +
                    std::to_string(gold_vars) + ", predicted has " + std::to_string(pred_vars));
  }
  const int pred_total = static_cast<int>(predicted.size());
  const int gold_total = static_cast<int>(gold.size());
  const int ceiling = std::min(pred_total, gold_total);

  const bool pred_is_smaller = pred_vars <= gold_vars;
  const TripleSet& from = pred_is_smaller ? predicted : gold;
  const TripleSet& to = pred_is_smaller ? gold : predicted;
  ExactSearch search(from, to);
  const int matched = std::max(search.Run(ceiling), 0);

  std::vector<std::pair<std::string, std::string>> pairs;
  const auto& assignment = search.best_assignment();
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const std::string& a = from.variables[i];
    const std::string& b = to.variables[assignment[i]];
    if (pred_is_smaller) {
      pairs.emplace_back(a, b);
    } else {
      pairs.emplace_back(b, a);
    }
  }
  MappingResult result = MakeResult(VariableMapping(std::move(pairs)), matched, pred_total, gold_total);
  result.exact = true;
  return result;
}

MappingResult ScoreGraphs(const penman::AmrGraph& gold, const penman::AmrGraph& predicted,
                          const ScoreConfig& config) {
  const TripleSet gold_triples = analysis::ExtractTriples(gold);
  const TripleSet pred_triples = analysis::ExtractTriples(predicted);
  const auto threshold = static_cast<std::size_t>(std::max(config.exact_threshold, 0));
  if (threshold > 0 && gold_triples.variable_count() <= threshold && pred_triples.variable_count() <= threshold) {
    return BruteForceScore(gold_triples, pred_triples, config.exact_threshold);
  }
  return HillClimb(gold_triples, pred_triples, {config.restarts, config.seed});
}

ScoreOutcome ScorePair(std::string_view gold_text, std::string_view predicted_text, const ScoreConfig& config,
                       std::string_view entry_id) {
  penman::ParseResult gold = penman::Parse(gold_text);
  if (!gold.ok()) {
    const std::string id = entry_id.empty() ? std::string("<unnamed>") : std::string(entry_id);
    throw CorpusIntegrityError(id, "gold AMR for entry '" + id + "' is structurally invalid:\n" +
                                       gold.report.Describe());
  }
  penman::ParseResult predicted = penman::Parse(predicted_text);
  if (!predicted.ok()) return std::move(predicted.report);
  return ScoreGraphs(*gold.graph, *predicted.graph, config);
}

std::uint64_t DerivePairSeed(std::uint64_t run_seed, std::string_view entry_id) {
  return SplitMix64(run_seed ^ text::Fnv1a(entry_id));
}

}  // namespace amrbench::smatch

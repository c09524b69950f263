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

#include "amrbench/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "amrbench/analysis.h"
#include "amrbench/random.h"
#include "amrbench/text.h"

namespace amrbench::corpus {

namespace fs = std::filesystem;

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "test";
}

std::optional<Split> ParseSplit(std::string_view name) {
  const std::string lower = text::ToLower(name);
  if (lower == "train" || lower == "training") return Split::kTrain;
  if (lower == "dev" || lower == "development") return Split::kDev;
  if (lower == "test") return Split::kTest;
  return std::nullopt;
}

SubsetMap SubsetMap::Default() {
  SubsetMap map;
  map.Set("bolt", "Bolt");
  map.Set("consensus", "Consensus");
  map.Set("dfa", "DFA");
  map.Set("lorelei", "Lorelei");
  map.Set("proxy", "ProxyReports");
  map.Set("xinhua", "XinhuaMT");
  for (const char* token : {"cctv", "dfb", "fables", "guidelines", "mt09sdl", "wb", "wiki"}) map.Set(token, token);
  return map;
}

std::optional<std::string> SubsetMap::TagForToken(std::string_view token) const {
  auto it = tags_.find(text::ToLower(token));
  if (it == tags_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> SubsetMap::TagForId(std::string_view id) const {
  const std::string lower = text::ToLower(id);
  // Longest matching prefix wins.
  const std::string* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& [token, tag] : tags_) {
    if (token.size() > best_len && text::StartsWith(lower, token)) {
      best = &tag;
      best_len = token.size();
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

FileProvenance InferProvenance(const fs::path& path) {
  FileProvenance out;
  const std::string stem = text::ToLower(path.stem().string());
  const std::string marker = "amrs-";
  const std::size_t at = stem.find(marker);
  if (at != std::string::npos) {
    const std::string rest = stem.substr(at + marker.size());
    const std::size_t dash = rest.find('-');
    out.split = ParseSplit(rest.substr(0, dash));
    if (dash != std::string::npos) out.token = rest.substr(dash + 1);
  }
  if (!out.split) {
    for (const auto& part : path.parent_path()) {
      if (auto split = ParseSplit(part.string())) out.split = split;
    }
  }
  return out;
}

namespace {

bool IsBlank(std::string_view line) { return text::Trim(line).empty(); }

// Blocks of consecutive non-blank lines.
std::vector<std::string> SplitBlocks(std::istream& in) {
  std::vector<std::string> blocks;
  std::string current;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlank(line)) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
      continue;
    }
    current += line;
    current += '\n';
  }
  if (!current.empty()) blocks.push_back(std::move(current));
  return blocks;
}

}  // namespace

std::vector<CorpusEntry> LoadBlocks(std::istream& in, const LoadOptions& options) {
  std::vector<CorpusEntry> entries;
  std::unordered_set<std::string> ids;
  std::size_t ordinal = 0;
  for (const std::string& block : SplitBlocks(in)) {
    ++ordinal;
    std::size_t body_offset = 0;
    const std::string_view header = penman::SplitHeader(block, &body_offset);
    const std::string_view body = text::Trim(std::string_view(block).substr(body_offset));
    if (body.empty()) continue;  // comment-only block, e.g. a file banner

    auto metadata = penman::ParseMetadata(header);
    auto id = metadata.find("id");
    if (id == metadata.end() || id->second.empty()) {
      throw CorpusError("block " + std::to_string(ordinal) + " has no '::id'");
    }
    CorpusEntry entry;
    entry.id = id->second;
    if (!ids.insert(entry.id).second) throw CorpusError("duplicate entry id '" + entry.id + "'");
    auto snt = metadata.find("snt");
    if (snt == metadata.end()) throw CorpusError("entry '" + entry.id + "' has no '::snt'");
    entry.sentence = snt->second;

    const penman::ParseResult parsed = penman::Parse(block);
    if (!parsed.ok()) {
      if (options.skip_invalid) {
        if (options.on_skip) options.on_skip({entry.id, parsed.report.Describe()});
        continue;
      }
      throw CorpusError("gold AMR for entry '" + entry.id + "' does not parse:\n" + parsed.report.Describe());
    }
    entry.amr_text = std::string(body);
    entry.depth = analysis::Depth(*parsed.graph);
    entry.split = options.split;
    if (!options.default_subset.empty()) {
      entry.subset = options.default_subset;
    } else {
      entry.subset = options.subsets.TagForId(entry.id).value_or("Other");
    }
    entry.metadata = std::move(metadata);
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<CorpusEntry> LoadFile(const fs::path& path, LoadOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus file " + path.string());
  const FileProvenance provenance = InferProvenance(path);
  if (provenance.split) options.split = *provenance.split;
  if (provenance.token && options.default_subset.empty()) {
    options.default_subset = options.subsets.TagForToken(*provenance.token).value_or(*provenance.token);
  }
  try {
    return LoadBlocks(in, options);
  } catch (const CorpusError& e) {
    throw CorpusError(path.string() + ": " + e.what());
  }
}

std::vector<CorpusEntry> LoadPath(const fs::path& path, const LoadOptions& options) {
  if (!fs::is_directory(path)) return LoadFile(path, options);
  std::vector<fs::path> files;
  for (const auto& item : fs::recursive_directory_iterator(path)) {
    if (item.is_regular_file() && item.path().extension() == ".txt") files.push_back(item.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> all;
  std::unordered_set<std::string> ids;
  for (const auto& file : files) {
    for (auto& entry : LoadFile(file, options)) {
      if (!ids.insert(entry.id).second) {
        throw CorpusError(file.string() + ": duplicate entry id '" + entry.id + "'");
      }
      all.push_back(std::move(entry));
    }
  }
  return all;
}

const SubsetCatalog& SubsetCatalog::Release3() {
  static const SubsetCatalog catalog = [] {
    SubsetCatalog c;
    c.rows_ = {
        {"bolt", "BOLT DF MT", 1061, 133, 133},
        {"cctv", "Broadcast conversation", 214, 0, 0},
        {"consensus", "Weblog and WSJ", 0, 100, 100},
        {"dfa", "BOLT DF English", 7379, 210, 229},
        {"dfb", "DEFT DF English", 32915, 0, 0},
        {"fables", "Aesop fables", 49, 0, 0},
        {"guidelines", "Guidelines AMRs", 970, 0, 0},
        {"lorelei", "LORELEI", 4441, 354, 527},
        {"mt09sdl", "2009 Open MT", 204, 0, 0},
        {"proxy", "Proxy reports", 6603, 826, 823},
        {"wb", "Weblog", 866, 0, 0},
        {"wiki", "Wikipedia", 192, 0, 0},
        {"xinhua", "Xinhua MT", 741, 99, 86},
    };
    return c;
  }();
  return catalog;
}

namespace {

int CountFor(const SubsetCatalog::Row& row, Split split) {
  switch (split) {
    case Split::kTrain: return row.train;
    case Split::kDev: return row.dev;
    case Split::kTest: return row.test;
  }
  return 0;
}

}  // namespace

int SubsetCatalog::Total(Split split) const {
  int total = 0;
  for (const auto& row : rows_) total += CountFor(row, split);
  return total;
}

int SubsetCatalog::Expected(std::string_view token, Split split) const {
  for (const auto& row : rows_) {
    if (row.token == token) return CountFor(row, split);
  }
  return 0;
}

std::vector<CatalogMismatch> CheckCatalog(const std::vector<CorpusEntry>& entries, const SubsetCatalog& catalog,
                                          const SubsetMap& subsets) {
  std::map<std::string, std::string> token_of_tag;
  for (const auto& [token, tag] : subsets.tags()) token_of_tag.emplace(tag, token);

  std::map<std::pair<std::string, Split>, int> actual;
  for (const auto& e : entries) {
    auto it = token_of_tag.find(e.subset);
    ++actual[{it == token_of_tag.end() ? e.subset : it->second, e.split}];
  }

  std::vector<CatalogMismatch> out;
  std::set<std::pair<std::string, Split>> seen;
  for (const auto& row : catalog.rows()) {
    for (Split split : {Split::kTrain, Split::kDev, Split::kTest}) {
      seen.insert({row.token, split});
      auto it = actual.find({row.token, split});
      const int count = it == actual.end() ? 0 : it->second;
      if (count != CountFor(row, split)) out.push_back({row.token, split, CountFor(row, split), count});
    }
  }
  for (const auto& [cell, count] : actual) {
    if (!seen.count(cell)) out.push_back({cell.first, cell.second, 0, count});
  }
  return out;
}

Sample StratifiedSample(const std::vector<CorpusEntry>& entries, int per_depth, DepthRange range, std::uint64_t seed) {
  if (per_depth < 1) throw std::invalid_argument("per_depth must be >= 1");
  if (range.min > range.max) throw std::invalid_argument("empty depth range");
  Sample sample;
  for (int depth = range.min; depth <= range.max; ++depth) {
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].depth == depth) pool.push_back(i);
    }
    const std::size_t take = std::min(pool.size(), static_cast<std::size_t>(per_depth));
    if (pool.size() < static_cast<std::size_t>(per_depth)) {
      sample.shortfalls.push_back({depth, per_depth, static_cast<int>(pool.size())});
    }
    std::mt19937_64 rng(SplitMix64(seed ^ SplitMix64(static_cast<std::uint64_t>(depth))));
    for (std::size_t i = 0; i < take; ++i) {
      std::swap(pool[i], pool[i + UniformIndex(rng, pool.size() - i)]);
    }
    pool.resize(take);
    std::sort(pool.begin(), pool.end());
    for (std::size_t i : pool) sample.entries.push_back(entries[i]);
  }
  return sample;
}

std::string RenderChat(extraction::TemplateFamily family, std::string_view system, std::string_view user,
                       const std::optional<std::string>& assistant, const extraction::ExtractionTable& table) {
  using extraction::TemplateFamily;
  const extraction::Delimiters& d = table.delimiters(family);
  std::string out;
  std::string_view gap = "\n";
  switch (family) {
    case TemplateFamily::kLlama32:
    case TemplateFamily::kDeepSeekR1LlamaDistilled:
      out += "<|begin_of_text|><|start_header_id|>system<|end_header_id|>\n\n";
      out += system;
      out += "<|eot_id|><|start_header_id|>user<|end_header_id|>\n\n";
      out += user;
      out += "<|eot_id|>";
      gap = "\n\n";
      break;
    case TemplateFamily::kPhi35:
      out += "<|system|>\n";
      out += system;
      out += "<|end|>\n<|user|>\n";
      out += user;
      out += "<|end|>\n";
      break;
    case TemplateFamily::kGemma2:
      // No system role; the system prompt opens the user turn.
      out += "<bos><start_of_turn>user\n";
      out += system;
      out += "\n\n";
      out += user;
      out += "<end_of_turn>\n";
      break;
    case TemplateFamily::kPlain:
      out += system;
      out += "\n\n";
      out += user;
      out += "\n\n";
      gap = "";
      break;
  }
  out += d.assistant_start;
  out += gap;
  if (assistant) {
    out += *assistant;
    out += d.turn_end;
    if (family == TemplateFamily::kPhi35 || family == TemplateFamily::kGemma2) out += '\n';
  }
  return out;
}

std::size_t FormatFinetune(const std::vector<CorpusEntry>& entries, extraction::TemplateFamily family,
                           const FinetuneOptions& options, std::ostream& out) {
  for (const auto& entry : entries) {
    nlohmann::ordered_json record;
    record["id"] = entry.id;
    record["system"] = options.system_prompt;
    record["user"] = entry.sentence;
    std::optional<std::string> assistant;
    if (!options.inference) {
      assistant = entry.amr_text;
      record["assistant"] = entry.amr_text;
    }
    record["text"] = RenderChat(family, options.system_prompt, entry.sentence, assistant, options.table);
    out << record.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
  return entries.size();
}

}  // namespace amrbench::corpus

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

// Corpus ingestion for LDC-style AMR release files, subset bookkeeping,
// depth-stratified sampling and chat-format fine-tuning records.
//
// A corpus file is a sequence of blank-line separated blocks:
//
//   # ::id sdl_0002.2 ::date 2013-07-04T02:23:45 ::annotator SDL-AMR-09
//   # ::snt This will ultimately accelerate ...
//   (a / accelerate-01
//       :ARG0 (t / this) ...)

#ifndef AMRBENCH_CORPUS_H_
#define AMRBENCH_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "amrbench/extraction.h"
#include "amrbench/penman.h"

namespace amrbench::corpus {

enum class Split { kTrain, kDev, kTest };

std::string_view SplitName(Split split);
std::optional<Split> ParseSplit(std::string_view name);

struct CorpusEntry {
  std::string id;
  std::string sentence;
  std::string amr_text;  // graph body only, header lines removed
  std::string subset;    // "Bolt", "Lorelei", ... or the release token
  Split split = Split::kTest;
  int depth = 0;
  penman::AmrGraph::Metadata metadata;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Release provenance tokens ("bolt", "dfa", "proxy", ...) to subset tags.
// Matched against the token after "amrs-<split>-" in a file name, then as
// a case-insensitive prefix of the entry id.
class SubsetMap {
 public:
  // Tokens of the thirteen release sources. The six test sources carry the
  // tags Bolt, Consensus, DFA, Lorelei, ProxyReports and XinhuaMT; the rest
  // keep their token as tag.
  static SubsetMap Default();

  void Set(std::string token, std::string tag) { tags_[std::move(token)] = std::move(tag); }
  std::optional<std::string> TagForToken(std::string_view token) const;
  std::optional<std::string> TagForId(std::string_view id) const;
  const std::map<std::string, std::string>& tags() const { return tags_; }

 private:
  std::map<std::string, std::string> tags_;
};

// "amr-release-3.0-amrs-test-bolt.txt" -> {split test, token "bolt"}.
struct FileProvenance {
  std::optional<Split> split;
  std::optional<std::string> token;
};
FileProvenance InferProvenance(const std::filesystem::path& path);

struct SkippedEntry {
  std::string id;
  std::string reason;
};

struct LoadOptions {
  Split split = Split::kTest;
  // Subset tag for entries whose id matches no prefix. Empty means "Other".
  std::string default_subset;
  SubsetMap subsets = SubsetMap::Default();
  // Silver data: skip entries whose graph fails to parse instead of aborting.
  bool skip_invalid = false;
  std::function<void(const SkippedEntry&)> on_skip;
};

// Parses every block of `in`. Throws CorpusError on a duplicate id, a block
// without ::id or ::snt, or (unless skip_invalid) an unparseable graph; the
// message names the entry.
std::vector<CorpusEntry> LoadBlocks(std::istream& in, const LoadOptions& options = {});

// LoadBlocks on one file, with split and subset inferred from its name when
// possible.
std::vector<CorpusEntry> LoadFile(const std::filesystem::path& path, LoadOptions options = {});

// A file, or every *.txt file under a directory (sorted by path). Ids must be
// unique across files.
std::vector<CorpusEntry> LoadPath(const std::filesystem::path& path, const LoadOptions& options = {});

// Expected (subset token, split) counts of the AMR 3.0 release.
class SubsetCatalog {
 public:
  struct Row {
    std::string token;
    std::string description;
    int train;
    int dev;
    int test;
  };

  static const SubsetCatalog& Release3();

  const std::vector<Row>& rows() const { return rows_; }
  int Total(Split split) const;
  int Expected(std::string_view token, Split split) const;

 private:
  std::vector<Row> rows_;
};

struct CatalogMismatch {
  std::string subset;
  Split split;
  int expected;
  int actual;
};

// Cells whose loaded count differs from the catalog. Entries are keyed by
// subset tag, mapped back to release tokens through `subsets`.
std::vector<CatalogMismatch> CheckCatalog(const std::vector<CorpusEntry>& entries, const SubsetCatalog& catalog,
                                          const SubsetMap& subsets = SubsetMap::Default());

struct DepthRange {
  int min;
  int max;  // inclusive
};

struct Shortfall {
  int depth;
  int requested;
  int available;
};

struct Sample {
  std::vector<CorpusEntry> entries;  // depth ascending, corpus order within a depth
  std::vector<Shortfall> shortfalls;
};

// Picks min(per_depth, available) entries uniformly without replacement at
// each depth in `range`. Each depth draws from its own generator derived
// from `seed`, so widening the range leaves earlier picks unchanged.
Sample StratifiedSample(const std::vector<CorpusEntry>& entries, int per_depth, DepthRange range, std::uint64_t seed);

inline constexpr std::string_view kDefaultSystemPrompt =
    "You are an AMR parser. Convert English sentences into Abstract Meaning Representation (AMR) graphs. "
    "Use proper AMR notation and formatting.";

struct ChatExample {
  std::string system;
  std::string user;
  std::string assistant;
};

// Full chat transcript in the family's template. Without `assistant` the
// transcript ends with an open assistant turn, ready for generation.
std::string RenderChat(extraction::TemplateFamily family, std::string_view system, std::string_view user,
                       const std::optional<std::string>& assistant,
                       const extraction::ExtractionTable& table = {});

struct FinetuneOptions {
  std::string system_prompt = std::string(kDefaultSystemPrompt);
  // Emit prompts for generation: no assistant payload, open assistant turn.
  bool inference = false;
  extraction::ExtractionTable table;
};

// One JSON object per line: id, system, user, assistant (omitted for
// inference prompts), text. Returns the number of records written.
std::size_t FormatFinetune(const std::vector<CorpusEntry>& entries, extraction::TemplateFamily family,
                           const FinetuneOptions& options, std::ostream& out);

}  // namespace amrbench::corpus

#endif  // AMRBENCH_CORPUS_H_

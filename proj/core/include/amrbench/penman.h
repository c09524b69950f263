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

// Penman notation: tokenizer, parser, serializer and structural validator
// for AMR graphs.
//
//   # ::id ex.1 ::snt The boy wants to go .
//   (w / want-01
//       :arg0 (b / boy)
//       :arg1 (g / go-01
//           :arg0 b))
//
// Parsing never throws on malformed input. Every independent defect is
// reported as a StructuralError with a byte offset into the input.

#ifndef AMRBENCH_PENMAN_H_
#define AMRBENCH_PENMAN_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amrbench::penman {

enum class TokenKind { kLParen, kRParen, kSlash, kRelation, kSymbol, kQuotedString, kError };

// One lexeme. For kQuotedString `text` is the unescaped content without the
// surrounding quotes; for kRelation it includes the leading colon.
struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset = 0;
  std::size_t length = 0;  // bytes consumed in the input

  bool operator==(const Token&) const = default;
};

// Total: any byte sequence yields tokens, with kError tokens marking
// unterminated quoted strings.
std::vector<Token> Tokenize(std::string_view text, std::size_t base_offset = 0);

// True for names that may bind a node: non-empty, no whitespace, parentheses,
// colons, slashes or quotes.
bool IsValidVariableName(std::string_view name);

// Shape of an undeclared bare symbol that is read as a dangling variable
// reference rather than a constant: one ASCII letter followed by digits.
bool LooksLikeVariable(std::string_view symbol);

// ":arg0", ":op1", ":prep-on", ":arg0-of". Case-insensitive.
bool IsWellFormedRelation(std::string_view label);

// Suffix "-of" marks an inverse role.
bool IsInverseLabel(std::string_view label);

struct EdgeTarget {
  enum class Kind { kVariable, kConstant };

  Kind kind = Kind::kConstant;
  std::string value;    // variable name or constant text (unquoted)
  bool quoted = false;  // constant was written as a quoted string

  static EdgeTarget Variable(std::string name) { return {Kind::kVariable, std::move(name), false}; }
  static EdgeTarget Constant(std::string text, bool quoted = false) {
    return {Kind::kConstant, std::move(text), quoted};
  }

  bool is_variable() const { return kind == Kind::kVariable; }
  // Constant as it appears in Penman text, quotes included.
  std::string Lexeme() const;

  bool operator==(const EdgeTarget&) const = default;
};

struct Edge {
  std::string source;
  std::string label;  // lowercase, leading colon
  EdgeTarget target;
  // The target node is defined inline under this edge, i.e. the edge belongs
  // to the nesting tree written in the text.
  bool nests_target = false;

  bool operator==(const Edge&) const = default;
};

struct Instance {
  std::string variable;
  std::string concept_label;

  bool operator==(const Instance&) const = default;
};

// Rooted AMR graph. Immutable once built; Create() enforces the structural
// invariants and throws std::invalid_argument when one is violated.
class AmrGraph {
 public:
  using Metadata = std::map<std::string, std::string>;

  static AmrGraph Create(std::string root, std::vector<Instance> instances, std::vector<Edge> edges,
                         Metadata metadata = {});

  const std::string& root() const { return root_; }
  // Document order.
  const std::vector<Instance>& instances() const { return instances_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Metadata& metadata() const { return metadata_; }

  bool HasVariable(std::string_view variable) const;
  // Concept bound to `variable`; throws std::out_of_range when undefined.
  const std::string& ConceptOf(std::string_view variable) const;
  std::optional<std::string> MetadataValue(const std::string& key) const;

  bool operator==(const AmrGraph&) const = default;

 private:
  AmrGraph() = default;

  std::string root_;
  std::vector<Instance> instances_;
  std::vector<Edge> edges_;
  Metadata metadata_;
};

enum class ErrorKind {
  kUnbalancedParens,
  kDuplicateVariable,
  kUndefinedVariable,
  kEmptyConcept,
  kMalformedRelation,
  kMissingRoot,
  kTrailingGarbage,
  kUnparseable,
};

std::string_view ErrorKindName(ErrorKind kind);

struct StructuralError {
  ErrorKind kind;
  std::size_t offset = 0;
  std::string message;

  bool operator==(const StructuralError&) const = default;
};

struct StructuralReport {
  std::vector<StructuralError> errors;

  bool valid() const { return errors.empty(); }
  std::vector<ErrorKind> Kinds() const;
  // One line per error: "<offset>: <Kind>: <message>".
  std::string Describe() const;
};

// Outcome of Parse(): a graph exactly when the report is valid.
struct ParseResult {
  std::optional<AmrGraph> graph;
  StructuralReport report;

  bool ok() const { return graph.has_value(); }
};

// Parses one graph, optionally preceded by "# ::key value" header lines and
// other '#' comment lines. Relation labels are lowercased.
ParseResult Parse(std::string_view text);

// Equivalent to Parse(text).report.
StructuralReport Validate(std::string_view text);

// Header lines ("# ::id x ::snt ...") into a key/value map. Non-metadata
// comment lines are ignored.
AmrGraph::Metadata ParseMetadata(std::string_view header);

// Splits `text` into its leading '#' header block and the graph body.
// `body_offset` receives the byte offset of the body.
std::string_view SplitHeader(std::string_view text, std::size_t* body_offset = nullptr);

// Penman text with 4-space indentation per nesting level. Nodes stay under
// the edge that nested them in the parsed text; other mentions are bare
// references. Nodes reachable only through incoming edges are emitted with
// inverted ("-of") labels, so such graphs do not round-trip label for label.
std::string Serialize(const AmrGraph& graph);

}  // namespace amrbench::penman

#endif  // AMRBENCH_PENMAN_H_

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

#include "amrbench/penman.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "amrbench/text.h"

namespace amrbench::penman {
namespace {

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// Characters that terminate a symbol or role.
bool IsDelimiter(char c) { return IsSpace(c) || c == '(' || c == ')' || c == '"' || c == '/' || c == ':'; }

}  // namespace

std::vector<Token> Tokenize(std::string_view text, std::size_t base_offset) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (IsSpace(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    switch (c) {
      case '(':
        tokens.push_back({TokenKind::kLParen, "(", base_offset + start, 1});
        ++i;
        continue;
      case ')':
        tokens.push_back({TokenKind::kRParen, ")", base_offset + start, 1});
        ++i;
        continue;
      case '/':
        tokens.push_back({TokenKind::kSlash, "/", base_offset + start, 1});
        ++i;
        continue;
      default:
        break;
    }
    if (c == '"') {
      std::string value;
      ++i;
      bool closed = false;
      while (i < n) {
        const char d = text[i];
        if (d == '\\' && i + 1 < n && (text[i + 1] == '"' || text[i + 1] == '\\')) {
          value.push_back(text[i + 1]);
          i += 2;
          continue;
        }
        if (d == '"') {
          closed = true;
          ++i;
          break;
        }
        value.push_back(d);
        ++i;
      }
      if (closed) {
        tokens.push_back({TokenKind::kQuotedString, std::move(value), base_offset + start, i - start});
      } else {
        tokens.push_back({TokenKind::kError, "unterminated quoted string", base_offset + start, n - start});
      }
      continue;
    }
    if (c == ':') {
      ++i;
      while (i < n && !IsDelimiter(text[i])) ++i;
      tokens.push_back({TokenKind::kRelation, std::string(text.substr(start, i - start)), base_offset + start,
                        i - start});
      continue;
    }
    while (i < n && !IsDelimiter(text[i])) ++i;
    tokens.push_back(
        {TokenKind::kSymbol, std::string(text.substr(start, i - start)), base_offset + start, i - start});
  }
  return tokens;
}

bool IsValidVariableName(std::string_view name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](char c) { return IsDelimiter(c); });
}

bool LooksLikeVariable(std::string_view symbol) {
  if (symbol.empty() || !std::isalpha(static_cast<unsigned char>(symbol[0]))) return false;
  return std::all_of(symbol.begin() + 1, symbol.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

bool IsWellFormedRelation(std::string_view label) {
  if (label.size() < 2 || label[0] != ':') return false;
  if (!std::isalpha(static_cast<unsigned char>(label[1]))) return false;
  return std::all_of(label.begin() + 2, label.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '_' || c == '.';
  });
}

bool IsInverseLabel(std::string_view label) { return label.size() > 4 && text::EndsWith(label, "-of"); }

std::string EdgeTarget::Lexeme() const {
  if (!quoted) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

AmrGraph AmrGraph::Create(std::string root, std::vector<Instance> instances, std::vector<Edge> edges,
                          Metadata metadata) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    if (!IsValidVariableName(inst.variable)) {
      throw std::invalid_argument("invalid variable name '" + inst.variable + "'");
    }
    if (inst.concept_label.empty()) throw std::invalid_argument("empty concept for '" + inst.variable + "'");
    if (!index.emplace(inst.variable, i).second) {
      throw std::invalid_argument("variable '" + inst.variable + "' defined twice");
    }
  }
  if (!index.count(root)) throw std::invalid_argument("root '" + root + "' has no instance");

  std::vector<std::vector<std::size_t>> adjacency(instances.size());
  std::unordered_set<std::string> nested;
  for (const auto& edge : edges) {
    if (!text::StartsWith(edge.label, ":")) throw std::invalid_argument("relation '" + edge.label + "' lacks ':'");
    auto src = index.find(edge.source);
    if (src == index.end()) throw std::invalid_argument("edge source '" + edge.source + "' undefined");
    if (edge.target.is_variable()) {
      auto dst = index.find(edge.target.value);
      if (dst == index.end()) throw std::invalid_argument("edge target '" + edge.target.value + "' undefined");
      adjacency[src->second].push_back(dst->second);
      adjacency[dst->second].push_back(src->second);
      if (edge.nests_target && !nested.insert(edge.target.value).second) {
        throw std::invalid_argument("variable '" + edge.target.value + "' nested twice");
      }
    } else if (edge.nests_target) {
      throw std::invalid_argument("constant target cannot be nested");
    }
  }

  std::vector<bool> seen(instances.size(), false);
  std::vector<std::size_t> frontier{index.at(root)};
  seen[frontier.front()] = true;
  while (!frontier.empty()) {
    const std::size_t v = frontier.back();
    frontier.pop_back();
    for (std::size_t w : adjacency[v]) {
      if (!seen[w]) {
        seen[w] = true;
        frontier.push_back(w);
      }
    }
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!seen[i]) throw std::invalid_argument("variable '" + instances[i].variable + "' unreachable from root");
  }

  AmrGraph graph;
  graph.root_ = std::move(root);
  graph.instances_ = std::move(instances);
  graph.edges_ = std::move(edges);
  graph.metadata_ = std::move(metadata);
  return graph;
}

bool AmrGraph::HasVariable(std::string_view variable) const {
  return std::any_of(instances_.begin(), instances_.end(),
                     [&](const Instance& inst) { return inst.variable == variable; });
}

const std::string& AmrGraph::ConceptOf(std::string_view variable) const {
  for (const auto& inst : instances_) {
    if (inst.variable == variable) return inst.concept_label;
  }
  throw std::out_of_range("no instance for variable '" + std::string(variable) + "'");
}

std::optional<std::string> AmrGraph::MetadataValue(const std::string& key) const {
  auto it = metadata_.find(key);
  if (it == metadata_.end()) return std::nullopt;
  return it->second;
}

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnbalancedParens: return "UnbalancedParens";
    case ErrorKind::kDuplicateVariable: return "DuplicateVariable";
    case ErrorKind::kUndefinedVariable: return "UndefinedVariable";
    case ErrorKind::kEmptyConcept: return "EmptyConcept";
    case ErrorKind::kMalformedRelation: return "MalformedRelation";
    case ErrorKind::kMissingRoot: return "MissingRoot";
    case ErrorKind::kTrailingGarbage: return "TrailingGarbage";
    case ErrorKind::kUnparseable: return "Unparseable";
  }
  return "Unknown";
}

std::vector<ErrorKind> StructuralReport::Kinds() const {
  std::vector<ErrorKind> kinds;
  kinds.reserve(errors.size());
  for (const auto& e : errors) kinds.push_back(e.kind);
  return kinds;
}

std::string StructuralReport::Describe() const {
  std::string out;
  for (const auto& e : errors) {
    out += std::to_string(e.offset);
    out += ": ";
    out += ErrorKindName(e.kind);
    out += ": ";
    out += e.message;
    out += '\n';
  }
  return out;
}

std::string_view SplitHeader(std::string_view text, std::size_t* body_offset) {
  std::size_t pos = 0;
  std::size_t header_end = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text::Trim(text.substr(pos, eol - pos));
    if (!line.empty() && line.front() != '#') break;
    pos = std::min(eol + 1, text.size());
    if (!line.empty()) header_end = pos;
  }
  if (body_offset != nullptr) *body_offset = header_end;
  return text.substr(0, header_end);
}

AmrGraph::Metadata ParseMetadata(std::string_view header) {
  AmrGraph::Metadata metadata;
  std::size_t pos = 0;
  while (pos < header.size()) {
    std::size_t eol = header.find('\n', pos);
    if (eol == std::string_view::npos) eol = header.size();
    std::string_view line = text::Trim(header.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.front() != '#') continue;
    line = text::Trim(line.substr(1));
    if (!text::StartsWith(line, "::")) continue;

    // Groups start at "::" found at line start or after whitespace.
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
      if (line[i] == ':' && line[i + 1] == ':' && (i == 0 || IsSpace(line[i - 1]))) {
        starts.push_back(i);
        ++i;
      }
    }
    for (std::size_t g = 0; g < starts.size(); ++g) {
      const std::size_t begin = starts[g] + 2;
      const std::size_t end = g + 1 < starts.size() ? starts[g + 1] : line.size();
      const std::string_view group = line.substr(begin, end - begin);
      std::size_t split = 0;
      while (split < group.size() && !IsSpace(group[split])) ++split;
      std::string key(group.substr(0, split));
      if (key.empty()) continue;
      metadata[std::move(key)] = std::string(text::Trim(group.substr(split)));
    }
  }
  return metadata;
}

namespace {

struct PendingReference {
  std::size_t edge_index;
  std::size_t offset;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t input_size) : tokens_(std::move(tokens)), input_size_(input_size) {}

  // Returns false when parsing aborted on an Unparseable defect.
  bool Run() {
    if (tokens_.empty()) {
      AddError(ErrorKind::kUnparseable, 0, "no graph found");
      return false;
    }
    if (tokens_.front().kind != TokenKind::kLParen) {
      if (tokens_.front().kind == TokenKind::kError) {
        AddError(ErrorKind::kUnparseable, tokens_.front().offset, tokens_.front().text);
        return false;
      }
      AddError(ErrorKind::kMissingRoot, tokens_.front().offset,
               "expected '(' to open the root node, found '" + tokens_.front().text + "'");
      return false;
    }
    if (!ParseBody()) return false;
    ScanTrailing();
    ResolveReferences();
    return true;
  }

  std::vector<StructuralError> TakeErrors() {
    std::stable_sort(errors_.begin(), errors_.end(),
                     [](const StructuralError& a, const StructuralError& b) { return a.offset < b.offset; });
    return std::move(errors_);
  }

  std::optional<std::string> root() const { return root_; }
  std::vector<Instance> TakeInstances() { return std::move(instances_); }
  std::vector<Edge> TakeEdges() { return std::move(edges_); }

 private:
  struct OpenNode {
    std::string variable;
    std::size_t lparen_offset;
  };

  const Token* Peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }

  void AddError(ErrorKind kind, std::size_t offset, std::string message) {
    errors_.push_back({kind, std::min(offset, input_size_), std::move(message)});
  }

  // Consumes '(' var '/' concept and pushes the node. `parent` and `label`
  // describe the edge that nests it, if any.
  bool OpenNodeAt(const std::string* parent, const std::string* label) {
    const Token& lparen = tokens_[pos_++];
    const Token* var = Peek();
    if (var == nullptr || var->kind != TokenKind::kSymbol) {
      const std::size_t at = var ? var->offset : lparen.offset;
      AddError(ErrorKind::kUnparseable, at, "expected a variable after '('");
      return false;
    }
    ++pos_;
    const std::string variable = var->text;

    const Token* next = Peek();
    std::string concept_label;
    if (next != nullptr && next->kind == TokenKind::kSlash) {
      ++pos_;
      const Token* c = Peek();
      if (c != nullptr && c->kind == TokenKind::kSymbol) {
        concept_label = c->text;
        ++pos_;
      } else {
        AddError(ErrorKind::kEmptyConcept, next->offset, "no concept after '/' for '" + variable + "'");
      }
    } else if (next != nullptr && next->kind == TokenKind::kSymbol) {
      // "(b boy)": missing slash, keep the concept.
      AddError(ErrorKind::kEmptyConcept, next->offset, "missing '/' before concept of '" + variable + "'");
      concept_label = next->text;
      ++pos_;
    } else {
      AddError(ErrorKind::kEmptyConcept, var->offset, "node '" + variable + "' has no concept");
    }

    if (defined_.count(variable)) {
      AddError(ErrorKind::kDuplicateVariable, var->offset, "variable '" + variable + "' defined twice");
    } else {
      defined_.insert(variable);
      instances_.push_back({variable, concept_label.empty() ? std::string("?") : concept_label});
    }
    if (!root_) root_ = variable;
    if (parent != nullptr) {
      edges_.push_back({*parent, *label, EdgeTarget::Variable(variable), true});
    }
    stack_.push_back({variable, lparen.offset});
    return true;
  }

  bool ParseBody() {
    if (!OpenNodeAt(nullptr, nullptr)) return false;
    while (!stack_.empty()) {
      const Token* tok = Peek();
      if (tok == nullptr) {
        const std::string count = std::to_string(stack_.size());
        AddError(ErrorKind::kUnbalancedParens, stack_.back().lparen_offset, count + " unclosed '('");
        stack_.clear();
        return true;
      }
      switch (tok->kind) {
        case TokenKind::kRParen:
          ++pos_;
          stack_.pop_back();
          break;
        case TokenKind::kRelation:
          if (!ParseRelation()) return false;
          break;
        case TokenKind::kError:
          AddError(ErrorKind::kUnparseable, tok->offset, tok->text);
          return false;
        case TokenKind::kLParen:
          AddError(ErrorKind::kMalformedRelation, tok->offset, "node without a role");
          if (!OpenNodeAt(nullptr, nullptr)) return false;
          break;
        case TokenKind::kSymbol:
        case TokenKind::kQuotedString:
        case TokenKind::kSlash: {
          AddError(ErrorKind::kMalformedRelation, tok->offset, "expected a role, found '" + tok->text + "'");
          ++pos_;
          const Token* value = Peek();
          if (value != nullptr && (value->kind == TokenKind::kSymbol || value->kind == TokenKind::kQuotedString)) {
            ++pos_;
          } else if (value != nullptr && value->kind == TokenKind::kLParen) {
            if (!OpenNodeAt(nullptr, nullptr)) return false;
          }
          break;
        }
      }
    }
    return true;
  }

  bool ParseRelation() {
    const Token& rel = tokens_[pos_++];
    const bool well_formed = IsWellFormedRelation(rel.text);
    if (!well_formed) AddError(ErrorKind::kMalformedRelation, rel.offset, "malformed role '" + rel.text + "'");
    const std::string label = text::ToLower(rel.text);
    const std::string& source = stack_.back().variable;
    const Token* value = Peek();
    // A role that is both malformed and valueless is one defect.
    if (value == nullptr) {
      if (well_formed) AddError(ErrorKind::kMalformedRelation, rel.offset, "role '" + rel.text + "' has no value");
      return true;  // the unclosed paren is reported by the caller
    }
    switch (value->kind) {
      case TokenKind::kLParen: {
        const std::string parent = source;
        return OpenNodeAt(&parent, &label);
      }
      case TokenKind::kSymbol:
        pending_.push_back({edges_.size(), value->offset});
        edges_.push_back({source, label, EdgeTarget::Constant(value->text), false});
        ++pos_;
        return true;
      case TokenKind::kQuotedString:
        edges_.push_back({source, label, EdgeTarget::Constant(value->text, true), false});
        ++pos_;
        return true;
      case TokenKind::kError:
        AddError(ErrorKind::kUnparseable, value->offset, value->text);
        return false;
      default:
        if (well_formed) AddError(ErrorKind::kMalformedRelation, rel.offset, "role '" + rel.text + "' has no value");
        return true;
    }
  }

  void ScanTrailing() {
    for (; pos_ < tokens_.size(); ++pos_) {
      const Token& tok = tokens_[pos_];
      if (tok.kind == TokenKind::kRParen) {
        AddError(ErrorKind::kUnbalancedParens, tok.offset, "unmatched ')'");
        continue;
      }
      AddError(ErrorKind::kTrailingGarbage, tok.offset, "unexpected '" + tok.text + "' after the root node");
      break;
    }
  }

  // Bare symbols become variable references once every definition is known.
  void ResolveReferences() {
    for (const auto& ref : pending_) {
      Edge& edge = edges_[ref.edge_index];
      if (defined_.count(edge.target.value)) {
        edge.target.kind = EdgeTarget::Kind::kVariable;
      } else if (LooksLikeVariable(edge.target.value)) {
        AddError(ErrorKind::kUndefinedVariable, ref.offset,
                 "reference to undefined variable '" + edge.target.value + "'");
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t input_size_;
  std::size_t pos_ = 0;
  std::vector<StructuralError> errors_;
  std::vector<OpenNode> stack_;
  std::unordered_set<std::string> defined_;
  std::vector<Instance> instances_;
  std::vector<Edge> edges_;
  std::vector<PendingReference> pending_;
  std::optional<std::string> root_;
};

}  // namespace

ParseResult Parse(std::string_view text) {
  std::size_t body_offset = 0;
  const std::string_view header = SplitHeader(text, &body_offset);

  Parser parser(Tokenize(text.substr(body_offset), body_offset), text.size());
  parser.Run();

  ParseResult result;
  result.report.errors = parser.TakeErrors();
  if (!result.report.valid()) return result;

  result.graph = AmrGraph::Create(*parser.root(), parser.TakeInstances(), parser.TakeEdges(), ParseMetadata(header));
  return result;
}

StructuralReport Validate(std::string_view text) { return Parse(text).report; }

namespace {

class Writer {
 public:
  explicit Writer(const AmrGraph& graph) : graph_(graph), edge_done_(graph.edges().size(), false) {
    for (const Edge& edge : graph.edges()) {
      if (edge.nests_target && edge.target.is_variable()) nested_.insert(edge.target.value);
    }
  }

  std::string Run() {
    Node(graph_.root(), 0);
    return std::move(out_);
  }

 private:
  // Variables keep the place the text gave them. Those with no nesting edge
  // open under the first edge that reaches them, inverted when needed.
  bool OpensHere(const std::string& variable, bool nesting_edge) const {
    return !opened_.count(variable) && (nesting_edge || !nested_.count(variable));
  }

  void Node(const std::string& variable, int level) {
    opened_.insert(variable);
    out_ += '(';
    out_ += variable;
    out_ += " / ";
    out_ += graph_.ConceptOf(variable);
    const auto& edges = graph_.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& edge = edges[i];
      if (edge_done_[i] || edge.source != variable) continue;
      edge_done_[i] = true;
      const bool open = edge.target.is_variable() && OpensHere(edge.target.value, edge.nests_target);
      Child(edge.label, edge.target, open, level + 1);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& edge = edges[i];
      if (edge_done_[i] || !edge.target.is_variable() || edge.target.value != variable) continue;
      if (!OpensHere(edge.source, false)) continue;
      edge_done_[i] = true;
      const std::string inverted = IsInverseLabel(edge.label) ? edge.label.substr(0, edge.label.size() - 3)
                                                              : edge.label + "-of";
      Child(inverted, EdgeTarget::Variable(edge.source), true, level + 1);
    }
    out_ += ')';
  }

  void Child(const std::string& label, const EdgeTarget& target, bool open, int level) {
    out_ += '\n';
    out_.append(static_cast<std::size_t>(level) * 4, ' ');
    out_ += label;
    out_ += ' ';
    if (open) {
      Node(target.value, level);
    } else {
      out_ += target.is_variable() ? target.value : target.Lexeme();
    }
  }

  const AmrGraph& graph_;
  std::vector<bool> edge_done_;
  std::unordered_set<std::string> nested_;
  std::unordered_set<std::string> opened_;
  std::string out_;
};

}  // namespace

std::string Serialize(const AmrGraph& graph) { return Writer(graph).Run(); }

}  // namespace amrbench::penman

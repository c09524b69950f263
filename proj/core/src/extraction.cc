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

#include "amrbench/extraction.h"

#include "amrbench/text.h"

namespace amrbench::extraction {
namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";

std::size_t Slot(TemplateFamily family) { return static_cast<std::size_t>(family); }

}  // namespace

std::string_view FamilyName(TemplateFamily family) {
  switch (family) {
    case TemplateFamily::kLlama32: return "llama32";
    case TemplateFamily::kDeepSeekR1LlamaDistilled: return "deepseek-r1-llama-distilled";
    case TemplateFamily::kPhi35: return "phi35";
    case TemplateFamily::kGemma2: return "gemma2";
    case TemplateFamily::kPlain: return "plain";
  }
  return "plain";
}

std::optional<TemplateFamily> ParseFamily(std::string_view name) {
  const std::string lower = text::ToLower(name);
  for (TemplateFamily f : kAllFamilies) {
    if (lower == FamilyName(f)) return f;
  }
  if (lower == "llama" || lower == "llama-3.2") return TemplateFamily::kLlama32;
  if (lower == "deepseek") return TemplateFamily::kDeepSeekR1LlamaDistilled;
  if (lower == "phi" || lower == "phi-3.5") return TemplateFamily::kPhi35;
  if (lower == "gemma" || lower == "gemma-2") return TemplateFamily::kGemma2;
  return std::nullopt;
}

Delimiters DefaultDelimiters(TemplateFamily family) {
  switch (family) {
    case TemplateFamily::kLlama32:
    case TemplateFamily::kDeepSeekR1LlamaDistilled:
      return {"<|start_header_id|>assistant<|end_header_id|>", "<|eot_id|>"};
    case TemplateFamily::kPhi35:
      return {"<|assistant|>", "<|end|>"};
    case TemplateFamily::kGemma2:
      return {"<start_of_turn>model", "<end_of_turn>"};
    case TemplateFamily::kPlain:
      return {"", ""};
  }
  return {"", ""};
}

ExtractionTable::ExtractionTable() {
  for (TemplateFamily f : kAllFamilies) delimiters_[Slot(f)] = DefaultDelimiters(f);
  strip_reasoning_[Slot(TemplateFamily::kDeepSeekR1LlamaDistilled)] = true;
}

const Delimiters& ExtractionTable::delimiters(TemplateFamily family) const { return delimiters_[Slot(family)]; }

void ExtractionTable::Override(TemplateFamily family, Delimiters delimiters) {
  delimiters_[Slot(family)] = std::move(delimiters);
}

bool ExtractionTable::strips_reasoning(TemplateFamily family) const { return strip_reasoning_[Slot(family)]; }

void ExtractionTable::SetStripReasoning(TemplateFamily family, bool strip) { strip_reasoning_[Slot(family)] = strip; }

std::string ExtractAmr(std::string_view raw, TemplateFamily family, const ExtractionTable& table) {
  const Delimiters& d = table.delimiters(family);
  std::string_view body = raw;
  if (!d.assistant_start.empty()) {
    const std::size_t at = body.rfind(d.assistant_start);
    if (at != std::string_view::npos) body = body.substr(at + d.assistant_start.size());
  }
  if (!d.turn_end.empty()) {
    const std::size_t end = body.find(d.turn_end);
    if (end != std::string_view::npos) body = body.substr(0, end);
  }
  body = text::Trim(body);

  if (table.strips_reasoning(family) && text::StartsWith(body, kThinkOpen)) {
    const std::size_t close = body.find(kThinkClose);
    if (close != std::string_view::npos) body = text::Trim(body.substr(close + kThinkClose.size()));
  }
  return std::string(body);
}

}  // namespace amrbench::extraction

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

// Recovers the AMR string from a raw chat-model generation that still
// carries its template tokens.

#ifndef AMRBENCH_EXTRACTION_H_
#define AMRBENCH_EXTRACTION_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace amrbench::extraction {

enum class TemplateFamily { kLlama32, kDeepSeekR1LlamaDistilled, kPhi35, kGemma2, kPlain };

inline constexpr std::array<TemplateFamily, 5> kAllFamilies = {
    TemplateFamily::kLlama32, TemplateFamily::kDeepSeekR1LlamaDistilled, TemplateFamily::kPhi35,
    TemplateFamily::kGemma2, TemplateFamily::kPlain};

// "llama32", "deepseek-r1-llama-distilled", "phi35", "gemma2", "plain".
std::string_view FamilyName(TemplateFamily family);
std::optional<TemplateFamily> ParseFamily(std::string_view name);

struct Delimiters {
  std::string assistant_start;
  std::string turn_end;

  bool operator==(const Delimiters&) const = default;
};

// Built-in delimiter pair of a family. Plain has none.
Delimiters DefaultDelimiters(TemplateFamily family);

// Per-family delimiter pairs and post-processing switches. Defaults to the
// built-in table; any entry may be overridden from configuration.
class ExtractionTable {
 public:
  ExtractionTable();

  const Delimiters& delimiters(TemplateFamily family) const;
  void Override(TemplateFamily family, Delimiters delimiters);

  // Drop a leading "<think>...</think>" block from the extracted text.
  bool strips_reasoning(TemplateFamily family) const;
  void SetStripReasoning(TemplateFamily family, bool strip);

 private:
  std::array<Delimiters, kAllFamilies.size()> delimiters_;
  std::array<bool, kAllFamilies.size()> strip_reasoning_{};
};

// Text after the last assistant-start delimiter, cut at the first following
// turn-end delimiter, trimmed. Without an assistant-start delimiter the
// whole input is used, still cut at the first turn-end delimiter. Total.
std::string ExtractAmr(std::string_view raw, TemplateFamily family, const ExtractionTable& table = {});

}  // namespace amrbench::extraction

#endif  // AMRBENCH_EXTRACTION_H_

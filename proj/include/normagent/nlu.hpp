// Copyright 2026 The norm-agent Authors.
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

// Utterance understanding: conventionalized frames ("you must ...",
// "suppose you could ...", "what rules do you follow?") around a verb phrase
// that is parsed compositionally into a VEL formula.
//
// Verb phrase grammar, over the domain lexicon:
//
//   vp     := head(base) ("while" ["not"] head(gerund))*
//   head   := VERB complement [relative]
//   complement := NOUN-PHRASE | QUANTIFIER-WORD | fixed complement
//   relative   := "which I" ("have" | "had") ["not"] PARTICIPLE
//
// A relative clause adds a literal sharing the noun phrase's term. Positive
// frames yield F over the conjunction, negative frames G over its negation.
//
// Note the literal wording of removals: "you can not" (two words) removes a
// positive norm while "you cannot" and "you can't" add a negative one.

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "normagent/lexicon.hpp"
#include "normagent/vel.hpp"

namespace normagent {

class NluError : public std::runtime_error {
 public:
  explicit NluError(const std::string& what) : std::runtime_error(what) {}
};

enum class IntentKind {
  kAddNorm,
  kRemoveNorm,
  kSupposeAdd,
  kSupposeRemove,
  kMakeItSo,
  kQueryNorms,
  kQueryBehavior,
  kQueryViolations,
  kWhyNot,
  kHowDone,
  kHowWorse,
  kUnknown,
};

enum class QueryMood { kActual, kAlternative };

struct Intent {
  IntentKind kind = IntentKind::kUnknown;
  // Norm for add/remove/suppose; for why-questions the premise the
  // counterfactual has to make true.
  std::optional<Formula> payload;
  QueryMood mood = QueryMood::kActual;
  std::string diagnostic;
};

enum class Polarity { kPositive, kNegative };

const char* to_string(IntentKind kind);

// Lowercased words with surrounding punctuation stripped; apostrophes kept.
std::vector<std::string> tokenize(std::string_view text);

Formula parse_vp(std::span<const std::string> tokens, const Lexicon& lex,
                 Polarity polarity);

// Total: unmatched or unparseable input yields kUnknown.
Intent parse_utterance(std::string_view text, const Lexicon& lex);

}  // namespace normagent

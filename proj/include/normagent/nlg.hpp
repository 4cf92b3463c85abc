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

// Template realization of norms, traces, violations and comparisons.
//
// A formula is realizable when it has the shape the understanding side
// produces: G over a negated conjunction or F over a plain one, at most one
// quantified variable, a positive first literal, and every variable
// occurrence confined to one noun phrase (its head literal plus at most one
// relative clause directly after it).

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "normagent/lexicon.hpp"
#include "normagent/planner.hpp"
#include "normagent/vel.hpp"
#include "normagent/world.hpp"

namespace normagent {

class NlgError : public std::runtime_error {
 public:
  explicit NlgError(const std::string& what) : std::runtime_error(what) {}
};

enum class Mood {
  kNormPresent,         // I must ...
  kNormHypothetical,    // I would have to ...
  kPastFactual,         // I left ... / I did not leave ...
  kPastCounterfactual,  // I would have left ... / I would not have left ...
  kGerund,              // leaving ... / not leaving ...
};

enum class WhyOutcome { kWorse, kImpossible };

bool realizable(const Formula& f, const Lexicon& lex);

// Clause without final punctuation, e.g. "I must leave the store".
std::string realize_norm(const Formula& f, Mood mood, const Lexicon& lex);
std::string realize_norm(const Norm& n, Mood mood, const Lexicon& lex);

// Full sentence; norms in insertion order.
std::string realize_norm_list(const NormSystem& ns, Mood mood,
                              const Lexicon& lex);

// Factual or counterfactual account of the actions of `t`.
std::string realize_trace(const Trace& t, Mood mood, const Lexicon& lex);

// One violated instance, e.g. "I did not leave the store while holding the
// watch".
std::string realize_instance(const Formula& f, const Binding& binding,
                             Mood mood, const Lexicon& lex);

std::string realize_violations(const ViolationReport& r, Mood mood,
                               const Lexicon& lex);

std::string realize_comparison(const NormInstance& worse,
                               const std::optional<NormInstance>& better,
                               const Lexicon& lex);

std::string realize_why_answer(const Formula& premise, WhyOutcome outcome,
                               const Lexicon& lex);

// Verb phrase for what the premise asserts, "I did ..." style: used when the
// actual behavior already satisfied it.
std::string realize_already_done(const Formula& premise, const Lexicon& lex);

// "a, b and c".
std::string join_and(const std::vector<std::string>& items);
// "a, and b" / "a, b, and c".
std::string join_serial(const std::vector<std::string>& items);

}  // namespace normagent

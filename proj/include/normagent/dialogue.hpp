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

// Dialogue session: the real norms and behavior, plus one alternative context
// (a why-counterfactual or a supposed norm change) that "would" questions
// read from.
//
// The actual trace is planned once when the session starts. Real norm
// changes only re-evaluate its violations; "make it so" commits supposed
// norms without adopting the supposed behavior.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "normagent/nlu.hpp"
#include "normagent/planner.hpp"
#include "normagent/world.hpp"

namespace normagent {

enum class AltKind { kCounterfactual, kHypothetical };

struct AlternativeContext {
  AltKind kind = AltKind::kHypothetical;
  NormSystem norms;
  std::optional<Formula> premise;
  // Absent when no episode satisfies the premise.
  std::optional<PlanResult> result;
};

struct DialogueState {
  std::shared_ptr<const DomainSpec> domain;
  NormSystem norms;
  PlanResult actual;
  std::optional<AlternativeContext> alt;
};

// Throws PlanError when the domain admits no complete episode.
DialogueState new_session(std::shared_ptr<const DomainSpec> domain);

std::pair<DialogueState, std::string> respond(const DialogueState& st,
                                              std::string_view utterance);

// Dispatch on an already parsed intent.
std::pair<DialogueState, std::string> respond(const DialogueState& st,
                                              const Intent& intent);

}  // namespace normagent

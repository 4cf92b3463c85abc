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

#include "normagent/dialogue.hpp"

#include <algorithm>

#include "normagent/nlg.hpp"

namespace normagent {

namespace {

constexpr const char* kOkay = "Okay.";
constexpr const char* kNoSuchRule = "I do not have that rule.";
constexpr const char* kDuplicateRule = "I already have that rule.";
constexpr const char* kNoAlternative = "I am not considering any alternative.";
constexpr const char* kCouldNot = "I could not have done that.";

void reevaluate(DialogueState& st) {
  auto [vec, report] = evaluate_norms(st.norms, st.actual.trace, *st.domain);
  st.actual.vector = std::move(vec);
  st.actual.report = std::move(report);
}

bool satisfied_by(const Formula& premise, const Trace& t,
                  const DomainSpec& d) {
  const auto states = t.atom_sets();
  for (const auto& inst : ground(premise, d.objects)) {
    if (evaluate(inst, std::span<const AtomSet>(states)).violated()) {
      return false;
    }
  }
  return true;
}

std::optional<PlanResult> try_plan(const DomainSpec& d, const NormSystem& ns) {
  try {
    return plan(d, ns);
  } catch (const PlanError&) {
    return std::nullopt;
  }
}

using Reply = std::pair<DialogueState, std::string>;

Reply unchanged(const DialogueState& st, std::string text) {
  return {st, std::move(text)};
}

Reply dispatch(const DialogueState& st, const Intent& in) {
  const DomainSpec& d = *st.domain;
  const Lexicon& lex = d.lexicon;
  DialogueState next = st;

  switch (in.kind) {
    case IntentKind::kAddNorm: {
      const Formula& f = *in.payload;
      check_formula(f, d);
      if (std::any_of(st.norms.norms().begin(), st.norms.norms().end(),
                      [&](const Norm& n) { return alpha_equal(n.formula, f); })) {
        return unchanged(st, kDuplicateRule);
      }
      next.norms.add(f, NormOrigin::kUserAdded);
      reevaluate(next);
      next.alt.reset();
      return {std::move(next), kOkay};
    }

    case IntentKind::kRemoveNorm: {
      if (!next.norms.remove(*in.payload)) return unchanged(st, kNoSuchRule);
      reevaluate(next);
      next.alt.reset();
      return {std::move(next), kOkay};
    }

    case IntentKind::kSupposeAdd:
    case IntentKind::kSupposeRemove: {
      const Formula& f = *in.payload;
      AlternativeContext alt;
      alt.kind = AltKind::kHypothetical;
      alt.norms = st.norms;
      if (in.kind == IntentKind::kSupposeAdd) {
        check_formula(f, d);
        if (alt.norms.find(f)) return unchanged(st, kDuplicateRule);
        alt.norms.add(f, NormOrigin::kUserAdded);
      } else if (!alt.norms.remove(f)) {
        return unchanged(st, kNoSuchRule);
      }
      alt.result = try_plan(d, alt.norms);
      next.alt = std::move(alt);
      return {std::move(next), kOkay};
    }

    case IntentKind::kMakeItSo: {
      if (!st.alt || st.alt->kind != AltKind::kHypothetical) {
        return unchanged(st, "There is nothing to make so.");
      }
      next.norms = st.alt->norms;
      reevaluate(next);
      next.alt.reset();
      return {std::move(next), kOkay};
    }

    case IntentKind::kWhyNot: {
      const Formula& premise = *in.payload;
      check_formula(premise, d);
      if (satisfied_by(premise, st.actual.trace, d)) {
        return unchanged(st, realize_already_done(premise, lex));
      }
      AlternativeContext alt;
      alt.kind = AltKind::kCounterfactual;
      alt.norms = st.norms;
      alt.premise = premise;
      alt.result = plan_constrained(d, st.norms, premise);
      std::string reply;
      if (!alt.result) {
        reply = realize_why_answer(premise, WhyOutcome::kImpossible, lex);
      } else {
        auto order = compare(alt.result->vector, st.actual.vector);
        if (order > 0) {
          reply = realize_why_answer(premise, WhyOutcome::kWorse, lex);
        } else if (order < 0) {
          reply = "I should have. That would have broken fewer rules.";
        } else {
          reply = "I could have. That would have been just as good.";
        }
      }
      next.alt = std::move(alt);
      return {std::move(next), std::move(reply)};
    }

    case IntentKind::kQueryNorms: {
      if (in.mood == QueryMood::kActual) {
        return unchanged(st,
                         realize_norm_list(st.norms, Mood::kNormPresent, lex));
      }
      if (!st.alt) return unchanged(st, kNoAlternative);
      return unchanged(
          st, realize_norm_list(st.alt->norms, Mood::kNormHypothetical, lex));
    }

    case IntentKind::kQueryBehavior:
    case IntentKind::kHowDone: {
      if (in.kind == IntentKind::kQueryBehavior &&
          in.mood == QueryMood::kActual) {
        return unchanged(
            st, realize_trace(st.actual.trace, Mood::kPastFactual, lex));
      }
      if (!st.alt) return unchanged(st, kNoAlternative);
      if (!st.alt->result) return unchanged(st, kCouldNot);
      return unchanged(st, realize_trace(st.alt->result->trace,
                                         Mood::kPastCounterfactual, lex));
    }

    case IntentKind::kQueryViolations: {
      if (in.mood == QueryMood::kActual) {
        return unchanged(
            st, realize_violations(st.actual.report, Mood::kPastFactual, lex));
      }
      if (!st.alt) return unchanged(st, kNoAlternative);
      if (!st.alt->result) return unchanged(st, kCouldNot);
      return unchanged(st, realize_violations(st.alt->result->report,
                                              Mood::kPastCounterfactual, lex));
    }

    case IntentKind::kHowWorse: {
      if (!st.alt) return unchanged(st, kNoAlternative);
      if (!st.alt->result) return unchanged(st, kCouldNot);
      // Both behaviors judged by the alternative's norms.
      const NormSystem& ns = st.alt->norms;
      PlanResult actual = st.actual;
      auto [vec, report] = evaluate_norms(ns, actual.trace, d);
      actual.vector = std::move(vec);
      actual.report = std::move(report);
      if (compare(actual.vector, st.alt->result->vector) >= 0) {
        return unchanged(st, "It would not have been worse.");
      }
      Regression r = worst_regression(actual, *st.alt->result, ns);
      return unchanged(st, realize_comparison(r.worse, r.better, lex));
    }

    case IntentKind::kUnknown:
      break;
  }
  return unchanged(st, "Sorry, I don't understand.");
}

}  // namespace

DialogueState new_session(std::shared_ptr<const DomainSpec> domain) {
  DialogueState st;
  st.domain = std::move(domain);
  st.norms = NormSystem::from_domain(*st.domain);
  st.actual = plan(*st.domain, st.norms);
  return st;
}

std::pair<DialogueState, std::string> respond(const DialogueState& st,
                                              const Intent& intent) {
  try {
    return dispatch(st, intent);
  } catch (const NlgError&) {
    return unchanged(st, "I cannot put that into words.");
  } catch (const DomainError&) {
    return unchanged(st, "I do not know how to follow that rule.");
  } catch (const std::exception&) {
    return unchanged(st, "Sorry, I don't understand.");
  }
}

std::pair<DialogueState, std::string> respond(const DialogueState& st,
                                              std::string_view utterance) {
  return respond(st, parse_utterance(utterance, st.domain->lexicon));
}

}  // namespace normagent

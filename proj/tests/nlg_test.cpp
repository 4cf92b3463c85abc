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

#include "normagent/nlg.hpp"

#include <gtest/gtest.h>

#include <string>

#include "normagent/nlu.hpp"
#include "testing/paths.hpp"

namespace normagent {
namespace {

using testing::shopping;

const Lexicon& lex() { return shopping().lexicon; }

Formula vel(const char* text) { return parse_vel(text, shopping().objects); }

const char kAntiStealing[] = "forall x. G !(leave & holding(x) & !bought(x))";
const char kObtainAll[] = "forall x. F (leave & holding(x))";

GroundAction act(std::string schema, std::optional<std::string> arg = {}) {
  return {std::move(schema), std::move(arg)};
}

TEST(Join, AndAndSerial) {
  EXPECT_EQ(join_and({}), "");
  EXPECT_EQ(join_and({"a"}), "a");
  EXPECT_EQ(join_and({"a", "b"}), "a and b");
  EXPECT_EQ(join_and({"a", "b", "c"}), "a, b and c");
  EXPECT_EQ(join_serial({"a", "b"}), "a, and b");
  EXPECT_EQ(join_serial({"a", "b", "c"}), "a, b, and c");
}

TEST(RealizeNorm, PresentAndHypothetical) {
  EXPECT_EQ(realize_norm(vel(kAntiStealing), Mood::kNormPresent, lex()),
            "I must not leave the store while holding anything which I have "
            "not bought");
  EXPECT_EQ(realize_norm(vel(kObtainAll), Mood::kNormPresent, lex()),
            "I must leave the store while holding everything");
  EXPECT_EQ(realize_norm(vel(kAntiStealing), Mood::kNormHypothetical, lex()),
            "I would have to not leave the store while holding anything "
            "which I have not bought");
  EXPECT_EQ(realize_norm(vel("G !(leave)"), Mood::kNormPresent, lex()),
            "I must not leave the store");
  EXPECT_EQ(realize_norm(vel("exists x. F (holding(x) & !bought(x))"),
                         Mood::kNormPresent, lex()),
            "I must hold something which I have not bought");
}

TEST(RealizeNorm, UnrealizableFormulas) {
  for (const char* text :
       {"G (leave)", "F !(leave)", "F (!leave)",
        "forall x. forall y. F (holding(x) & holding(y))",
        "forall x. F (leave & holding(x) & leave & bought(x))"}) {
    Formula f = vel(text);
    EXPECT_FALSE(realizable(f, lex())) << text;
    EXPECT_THROW(realize_norm(f, Mood::kNormPresent, lex()), NlgError) << text;
  }
}

TEST(RealizeNormList, SerialCommaAndEmpty) {
  NormSystem ns = NormSystem::from_domain(shopping());
  ns.add(vel("G !(leave)"));
  EXPECT_EQ(realize_norm_list(ns, Mood::kNormPresent, lex()),
            "I must not leave the store while holding anything which I have "
            "not bought, I must leave the store while holding everything, and "
            "I must not leave the store.");
  EXPECT_EQ(realize_norm_list(NormSystem(), Mood::kNormPresent, lex()),
            "I do not have any rules.");
  EXPECT_EQ(realize_norm_list(NormSystem(), Mood::kNormHypothetical, lex()),
            "I would not have any rules.");
}

TEST(RealizeTrace, FactualAndCounterfactual) {
  Trace t = rollout(shopping(), {act("pickup", "glasses"), act("pickup", "watch"),
                                 act("buy", "glasses"), act("leave")});
  EXPECT_EQ(realize_trace(t, Mood::kPastCounterfactual, lex()),
            "I would have picked up the glasses, picked up the watch, bought "
            "the glasses and left the store.");
  EXPECT_EQ(realize_trace(rollout(shopping(), {act("leave")}),
                          Mood::kPastFactual, lex()),
            "I left the store.");
  EXPECT_EQ(realize_trace(Trace{}, Mood::kPastFactual, lex()),
            "I did nothing.");
  EXPECT_EQ(realize_trace(Trace{}, Mood::kPastCounterfactual, lex()),
            "I would have done nothing.");
}

TEST(RealizeInstance, Moods) {
  Binding watch{{{"x", "watch"}}};
  Formula as = vel(kAntiStealing);
  EXPECT_EQ(realize_instance(as, watch, Mood::kPastFactual, lex()),
            "I left the store while holding the watch which I have not "
            "bought");
  EXPECT_EQ(realize_instance(as, watch, Mood::kPastCounterfactual, lex()),
            "I would have left the store while holding the watch which I had "
            "not bought");
  EXPECT_EQ(realize_instance(as, watch, Mood::kGerund, lex()),
            "leaving the store while holding the watch which I have not "
            "bought");
  Formula oa = vel(kObtainAll);
  EXPECT_EQ(realize_instance(oa, watch, Mood::kPastFactual, lex()),
            "I did not leave the store while holding the watch");
  EXPECT_EQ(realize_instance(oa, watch, Mood::kPastCounterfactual, lex()),
            "I would not have left the store while holding the watch");
  EXPECT_EQ(realize_instance(oa, watch, Mood::kGerund, lex()),
            "not leaving the store while holding the watch");
}

TEST(RealizeViolations, ListsEveryInstance) {
  const DomainSpec& d = shopping();
  NormSystem ns = NormSystem::from_domain(d);
  ns.add(vel("G !(leave)"));
  PlanResult r = plan(d, ns);
  EXPECT_EQ(realize_violations(r.report, Mood::kPastFactual, lex()),
            "I did not leave the store while holding the watch, and I left "
            "the store.");
  EXPECT_EQ(realize_violations(ViolationReport{}, Mood::kPastFactual, lex()),
            "I did not break any rules.");
  EXPECT_EQ(
      realize_violations(ViolationReport{}, Mood::kPastCounterfactual, lex()),
      "I would not have broken any rules.");
}

TEST(RealizeComparison, WithAndWithoutBetter) {
  NormSystem ns = NormSystem::from_domain(shopping());
  NormInstance worse{ns.norms()[0], Binding{{{"x", "watch"}}}};
  NormInstance better{ns.norms()[1], Binding{{{"x", "watch"}}}};
  EXPECT_EQ(realize_comparison(worse, better, lex()),
            "Leaving the store while holding the watch which I have not "
            "bought is worse than not leaving the store while holding the "
            "watch.");
  EXPECT_EQ(realize_comparison(worse, std::nullopt, lex()),
            "Leaving the store while holding the watch which I have not "
            "bought is worse than what I did.");
}

TEST(RealizeWhy, Answers) {
  EXPECT_EQ(realize_why_answer(vel(kObtainAll), WhyOutcome::kWorse, lex()),
            "I could have left the store while holding everything but that "
            "would have broken more important rules.");
  EXPECT_EQ(realize_why_answer(vel("F (bought(glasses) & bought(watch))"),
                               WhyOutcome::kImpossible, lex()),
            "I could not have bought the glasses while buying the watch.");
  EXPECT_EQ(realize_why_answer(vel("G !(leave)"), WhyOutcome::kWorse, lex()),
            "I could have not left the store but that would have broken more "
            "important rules.");
  EXPECT_EQ(realize_already_done(vel("F (leave)"), lex()),
            "But I did leave the store.");
  EXPECT_EQ(realize_already_done(vel("G !(holding(watch))"), lex()),
            "But I did not hold the watch.");
}

// Every realizable norm over the shopping vocabulary with up to three
// literals survives NLG followed by NLU.
std::vector<Formula> all_shopping_formulas() {
  std::vector<Literal> lits;
  std::vector<std::optional<Term>> args = {
      Term{TermKind::kObject, "glasses"}, Term{TermKind::kObject, "watch"},
      Term{TermKind::kVariable, "x"}};
  for (bool neg : {false, true}) {
    lits.push_back({Atom{"leave", std::nullopt}, neg});
    for (const char* p : {"holding", "bought"}) {
      for (const auto& a : args) lits.push_back({Atom{p, a}, neg});
    }
  }
  std::vector<std::vector<Literal>> bodies;
  for (const auto& a : lits) {
    bodies.push_back({a});
    for (const auto& b : lits) {
      bodies.push_back({a, b});
      for (const auto& c : lits) bodies.push_back({a, b, c});
    }
  }
  std::vector<Formula> out;
  for (const auto& body : bodies) {
    bool uses_x = std::any_of(body.begin(), body.end(), [](const Literal& l) {
      return l.atom.argument && l.atom.argument->kind == TermKind::kVariable;
    });
    std::vector<std::vector<QuantifiedVar>> prefixes;
    if (uses_x) {
      prefixes = {{{Quantifier::kForall, "x"}}, {{Quantifier::kExists, "x"}}};
    } else {
      prefixes = {{}};
    }
    for (const auto& prefix : prefixes) {
      out.push_back({prefix, TemporalOp::kAlways, {body, true}});
      out.push_back({prefix, TemporalOp::kEventually, {body, false}});
    }
  }
  return out;
}

TEST(NlgProperties, ExhaustiveRoundTripThroughNlu) {
  std::size_t realized = 0;
  for (const Formula& f : all_shopping_formulas()) {
    if (!realizable(f, lex())) continue;
    ++realized;
    std::string present = realize_norm(f, Mood::kNormPresent, lex());
    ASSERT_EQ(present.rfind("I ", 0), 0u);
    Intent add = parse_utterance("You " + present.substr(2) + ".", lex());
    ASSERT_EQ(add.kind, IntentKind::kAddNorm) << present << add.diagnostic;
    EXPECT_TRUE(alpha_equal(*add.payload, f))
        << print_vel(f) << " -> " << present << " -> "
        << print_vel(*add.payload);

    std::string hypo = realize_norm(f, Mood::kNormHypothetical, lex());
    const std::string lead = "I would have to ";
    ASSERT_EQ(hypo.rfind(lead, 0), 0u);
    Intent sup = parse_utterance(
        "Suppose you had to " + hypo.substr(lead.size()) + ".", lex());
    ASSERT_EQ(sup.kind, IntentKind::kSupposeAdd) << hypo << sup.diagnostic;
    EXPECT_TRUE(alpha_equal(*sup.payload, f)) << hypo;
  }
  EXPECT_GT(realized, 1000u);
}

}  // namespace
}  // namespace normagent

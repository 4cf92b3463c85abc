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

#include "normagent/vel.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "testing/generators.hpp"

namespace normagent {
namespace {

using testing::Rng;

const std::vector<std::string> kObjects = {"glasses", "watch"};

Literal lit(std::string pred, bool negated = false) {
  return {Atom{std::move(pred), std::nullopt}, negated};
}

Literal unary(std::string pred, std::string var, bool negated = false) {
  return {Atom{std::move(pred), Term{TermKind::kVariable, std::move(var)}},
          negated};
}

Formula anti_stealing() {
  return Formula{{{Quantifier::kForall, "x"}},
                 TemporalOp::kAlways,
                 {{lit("leave"), unary("holding", "x"), unary("bought", "x", true)},
                  true}};
}

Formula obtain_everything() {
  return Formula{{{Quantifier::kForall, "x"}},
                 TemporalOp::kEventually,
                 {{lit("leave"), unary("holding", "x")}, false}};
}

AtomSet atoms(std::initializer_list<GroundAtom> list) { return AtomSet(list); }

TEST(ParseVel, AntiStealingNorm) {
  EXPECT_EQ(parse_vel("forall x. G !(leave & holding(x) & !bought(x))"),
            anti_stealing());
}

TEST(ParseVel, ObtainEverythingNorm) {
  EXPECT_EQ(parse_vel("forall x. F (leave & holding(x))"),
            obtain_everything());
}

TEST(ParseVel, UnboundVariableIsAnError) {
  try {
    parse_vel("G !(leave & holding(x))");
    FAIL() << "expected an error";
  } catch (const VelSyntaxError& e) {
    EXPECT_NE(std::string(e.what()).find("unbound variable x"),
              std::string::npos);
    EXPECT_EQ(e.position(), 20u);
  }
}

TEST(ParseVel, ObjectConstantsNeedADomain) {
  EXPECT_THROW(parse_vel("F (holding(watch))"), VelSyntaxError);
  Formula f = parse_vel("F (holding(watch))", kObjects);
  ASSERT_TRUE(f.body.literals[0].atom.argument);
  EXPECT_EQ(f.body.literals[0].atom.argument->kind, TermKind::kObject);
}

TEST(ParseVel, BoundVariableShadowsObject) {
  Formula f = parse_vel("forall watch. F (holding(watch))", kObjects);
  EXPECT_EQ(f.body.literals[0].atom.argument->kind, TermKind::kVariable);
}

TEST(ParseVel, RejectsMalformedInput) {
  EXPECT_THROW(parse_vel(""), VelSyntaxError);
  EXPECT_THROW(parse_vel("forall x. forall x. F (p(x))"), VelSyntaxError);
  EXPECT_THROW(parse_vel("forall x. F (leave)"), VelSyntaxError);
  EXPECT_THROW(parse_vel("F (leave & )"), VelSyntaxError);
  EXPECT_THROW(parse_vel("F (leave) extra"), VelSyntaxError);
  EXPECT_THROW(parse_vel("X (leave)"), VelSyntaxError);
  EXPECT_THROW(parse_vel("G (leave"), VelSyntaxError);
}

TEST(ParseVel, UnparenthesizedSingleLiteral) {
  Formula f = parse_vel("G !leave");
  EXPECT_FALSE(f.body.negated);
  EXPECT_EQ(f.body.literals, std::vector<Literal>{lit("leave", true)});
  Formula g = parse_vel("G !(leave)");
  EXPECT_TRUE(g.body.negated);
  EXPECT_EQ(g.body.literals, std::vector<Literal>{lit("leave")});
}

TEST(PrintVel, CanonicalForms) {
  EXPECT_EQ(print_vel(anti_stealing()),
            "forall x. G !(leave & holding(x) & !bought(x))");
  EXPECT_EQ(print_vel(Formula{{}, TemporalOp::kEventually, {{lit("leave")}, false}}),
            "F (leave)");
  EXPECT_EQ(print_vel(Formula{{{Quantifier::kExists, "x"}},
                              TemporalOp::kEventually,
                              {{lit("leave"), unary("holding", "x")}, false}}),
            "exists x. F (leave & holding(x))");
}

TEST(AlphaEqual, RenamingAndReordering) {
  EXPECT_TRUE(alpha_equal(parse_vel("forall x. G !(leave & holding(x))"),
                          parse_vel("forall y. G !(holding(y) & leave)")));
}

TEST(AlphaEqual, QuantifierMustMatch) {
  EXPECT_FALSE(alpha_equal(parse_vel("forall x. F (leave & holding(x))"),
                           parse_vel("exists x. F (leave & holding(x))")));
}

TEST(AlphaEqual, OperatorMustMatch) {
  EXPECT_FALSE(alpha_equal(parse_vel("G !(leave)"), parse_vel("F !(leave)")));
}

TEST(AlphaEqual, NegationsAndPrefixOrderMatter) {
  EXPECT_FALSE(alpha_equal(parse_vel("G !(leave)"), parse_vel("G (!leave)")));
  EXPECT_FALSE(alpha_equal(parse_vel("F (leave & p)"),
                           parse_vel("F (leave & !p)")));
  // Positional correspondence: swapping the prefix changes the meaning.
  EXPECT_FALSE(alpha_equal(parse_vel("forall x. exists y. F (p(x) & q(y))"),
                           parse_vel("exists y. forall x. F (p(x) & q(y))")));
  EXPECT_TRUE(alpha_equal(parse_vel("forall x. exists y. F (p(x) & q(y))"),
                          parse_vel("forall y. exists x. F (q(x) & p(y))")));
}

TEST(AlphaEqual, LiteralMultiplicityMatters) {
  EXPECT_FALSE(alpha_equal(parse_vel("F (p & p & q)"),
                           parse_vel("F (p & q & q)")));
}

TEST(Ground, OneInstancePerObject) {
  auto insts = ground(obtain_everything(), kObjects);
  ASSERT_EQ(insts.size(), 2u);
  EXPECT_EQ(*insts[0].binding.lookup("x"), "glasses");
  EXPECT_EQ(*insts[1].binding.lookup("x"), "watch");
}

TEST(Ground, QuantifierFreeFormulaHasEmptyBinding) {
  auto insts = ground(parse_vel("G !(leave)"), kObjects);
  ASSERT_EQ(insts.size(), 1u);
  EXPECT_TRUE(insts[0].binding.entries.empty());
}

TEST(Ground, ExistentialStaysResidual) {
  auto insts = ground(parse_vel("exists x. F (holding(x))"),
                      std::vector<std::string>{"a", "b"});
  ASSERT_EQ(insts.size(), 1u);
  EXPECT_EQ(insts[0].existentials, std::vector<std::string>{"x"});
}

TEST(Ground, CartesianOrderLastVariableFastest) {
  auto insts = ground(parse_vel("forall x. forall y. F (p(x) & q(y))"),
                      std::vector<std::string>{"a", "b", "c"});
  ASSERT_EQ(insts.size(), 9u);
  EXPECT_EQ(insts[1].binding.entries,
            (std::vector<std::pair<std::string, std::string>>{{"x", "a"},
                                                              {"y", "b"}}));
  EXPECT_EQ(*insts[3].binding.lookup("x"), "b");
}

TEST(Ground, EmptyDomainWithQuantifierFails) {
  EXPECT_THROW(ground(obtain_everything(), std::vector<std::string>{}),
               VelError);
  EXPECT_EQ(ground(parse_vel("F (leave)"), std::vector<std::string>{}).size(),
            1u);
}

TEST(Ground, CountIsPowerOfUniversals) {
  Rng rng(7);
  auto vocab = testing::shopping_vocabulary();
  vocab.objects = {"a", "b", "c"};
  for (int i = 0; i < 200; ++i) {
    Formula f = testing::random_formula(rng, vocab, 3, 4);
    std::size_t universals = variables_of(f, Quantifier::kForall).size();
    std::size_t expected = 1;
    for (std::size_t k = 0; k < universals; ++k) expected *= 3;
    EXPECT_EQ(ground(f, vocab.objects).size(), expected) << print_vel(f);
  }
}

TEST(Evaluate, GWitnessIsFirstFailingStep) {
  auto inst = ground(parse_vel("G !(leave)"), kObjects).front();
  std::vector<AtomSet> states = {atoms({}), atoms({{"leave", std::nullopt}}),
                                 atoms({{"leave", std::nullopt}})};
  EXPECT_EQ(evaluate(inst, states), (Verdict{VerdictStatus::kViolated, 1}));
}

TEST(Evaluate, SingleStateBaseCase) {
  auto inst = ground(parse_vel("G (p)"), kObjects).front();
  std::vector<AtomSet> states = {atoms({})};
  EXPECT_EQ(evaluate(inst, states), (Verdict{VerdictStatus::kViolated, 0}));
}

TEST(Evaluate, FHasNoWitness) {
  auto inst = ground(parse_vel("F (leave)"), kObjects).front();
  std::vector<AtomSet> none = {atoms({}), atoms({})};
  std::vector<AtomSet> some = {atoms({}), atoms({{"leave", std::nullopt}})};
  EXPECT_EQ(evaluate(inst, none), (Verdict{VerdictStatus::kViolated, {}}));
  EXPECT_EQ(evaluate(inst, some), (Verdict{VerdictStatus::kSatisfied, {}}));
}

TEST(Evaluate, ExistentialResolvedPerStep) {
  auto inst = ground(parse_vel("exists x. F (leave & holding(x))"),
                     kObjects).front();
  std::vector<AtomSet> states = {
      atoms({{"holding", "watch"}}),
      atoms({{"holding", "watch"}, {"leave", std::nullopt}})};
  EXPECT_FALSE(evaluate(inst, states).violated());
  // G with a residual existential: some witness object at every step.
  auto g = ground(parse_vel("exists x. G (holding(x))"), kObjects).front();
  std::vector<AtomSet> switching = {atoms({{"holding", "watch"}}),
                                    atoms({{"holding", "glasses"}})};
  EXPECT_FALSE(evaluate(g, switching).violated());
}

TEST(Evaluate, UnknownObjectConstantFails) {
  GroundInstance inst;
  inst.source = parse_vel("F (holding(watch))", kObjects);
  inst.objects = {"glasses"};
  std::vector<AtomSet> states = {atoms({})};
  EXPECT_THROW(evaluate(inst, states), VelError);
  EXPECT_THROW(ground(inst.source, inst.objects), VelError);
}

TEST(Evaluate, EmptyTraceFails) {
  auto inst = ground(parse_vel("F (leave)"), kObjects).front();
  EXPECT_THROW(evaluate(inst, std::vector<AtomSet>{}), VelError);
}

TEST(Monitor, EventuallySatisfiedAtSecondState) {
  auto inst = std::make_shared<const GroundInstance>(
      ground(parse_vel("F (leave)"), kObjects).front());
  Monitor m = compile_monitor(inst);
  m = monitor_step(m, atoms({}));
  EXPECT_EQ(m.status, MonitorStatus::kPending);
  m = monitor_step(m, atoms({{"leave", std::nullopt}}));
  EXPECT_EQ(m.status, MonitorStatus::kSatisfiedForever);
  EXPECT_FALSE(monitor_finalize(m).violated());
}

TEST(Monitor, AlwaysViolatedWithWitness) {
  auto inst = std::make_shared<const GroundInstance>(
      ground(parse_vel("G !(leave)"), kObjects).front());
  Monitor m = compile_monitor(inst);
  m = monitor_step(m, atoms({}));
  m = monitor_step(m, atoms({{"leave", std::nullopt}}));
  EXPECT_EQ(m.status, MonitorStatus::kViolatedForever);
  EXPECT_EQ(m.witness, 1u);
  m = monitor_step(m, atoms({}));
  EXPECT_EQ(monitor_finalize(m), (Verdict{VerdictStatus::kViolated, 1}));
}

TEST(Monitor, PendingFinalization) {
  auto g = std::make_shared<const GroundInstance>(
      ground(parse_vel("G !(leave)"), kObjects).front());
  auto f = std::make_shared<const GroundInstance>(
      ground(parse_vel("F (leave)"), kObjects).front());
  EXPECT_FALSE(monitor_finalize(monitor_step(compile_monitor(g), atoms({})))
                   .violated());
  EXPECT_TRUE(monitor_finalize(monitor_step(compile_monitor(f), atoms({})))
                  .violated());
}

// Properties.

Formula rename_and_shuffle(const Formula& f, Rng& rng) {
  std::map<std::string, std::string> rename;
  Formula g = f;
  for (std::size_t i = 0; i < g.prefix.size(); ++i) {
    std::string fresh = "r" + std::to_string(i) + "z";
    rename[g.prefix[i].variable] = fresh;
    g.prefix[i].variable = fresh;
  }
  for (auto& l : g.body.literals) {
    if (l.atom.argument && l.atom.argument->kind == TermKind::kVariable) {
      l.atom.argument->name = rename.at(l.atom.argument->name);
    }
  }
  std::shuffle(g.body.literals.begin(), g.body.literals.end(), rng);
  return g;
}

TEST(VelProperties, PrintParseRoundTrip) {
  Rng rng(11);
  auto vocab = testing::shopping_vocabulary();
  for (int i = 0; i < 500; ++i) {
    Formula f = testing::random_formula(rng, vocab, 2, 5);
    EXPECT_EQ(parse_vel(print_vel(f), vocab.objects), f) << print_vel(f);
  }
}

TEST(VelProperties, AlphaEqualityIsAnEquivalence) {
  Rng rng(12);
  auto vocab = testing::shopping_vocabulary();
  for (int i = 0; i < 300; ++i) {
    Formula a = testing::random_formula(rng, vocab, 2, 4);
    Formula b = rename_and_shuffle(a, rng);
    Formula c = rename_and_shuffle(b, rng);
    EXPECT_TRUE(alpha_equal(a, a));
    EXPECT_TRUE(alpha_equal(a, b));
    EXPECT_TRUE(alpha_equal(b, a));
    EXPECT_TRUE(alpha_equal(a, c));
    Formula other = testing::random_formula(rng, vocab, 2, 4);
    EXPECT_EQ(alpha_equal(a, other), alpha_equal(other, a));
    EXPECT_EQ(alpha_equal(b, other), alpha_equal(a, other));
  }
}

TEST(VelProperties, MonitorMatchesDirectEvaluation) {
  Rng rng(13);
  auto vocab = testing::shopping_vocabulary();
  for (int i = 0; i < 1000; ++i) {
    Formula f = testing::random_formula(rng, vocab, 2, 4);
    auto states = testing::random_states(rng, vocab, 8);
    for (const auto& inst : ground(f, vocab.objects)) {
      Monitor m = compile_monitor(std::make_shared<const GroundInstance>(inst));
      for (const auto& s : states) {
        MonitorStatus before = m.status;
        m = monitor_step(m, s);
        if (before != MonitorStatus::kPending) {
          EXPECT_EQ(m.status, before) << "absorbing state left";
        }
      }
      EXPECT_EQ(monitor_finalize(m), evaluate(inst, states)) << print_vel(f);
    }
  }
}

TEST(VelProperties, ExtendingATraceIsMonotone) {
  Rng rng(14);
  auto vocab = testing::shopping_vocabulary();
  for (int i = 0; i < 500; ++i) {
    Formula f = testing::random_formula(rng, vocab, 1, 3);
    auto states = testing::random_states(rng, vocab, 5);
    auto longer = states;
    for (const auto& s : testing::random_states(rng, vocab, 3)) {
      longer.push_back(s);
    }
    for (const auto& inst : ground(f, vocab.objects)) {
      Verdict shorter = evaluate(inst, states);
      Verdict extended = evaluate(inst, longer);
      if (f.op == TemporalOp::kAlways && shorter.violated()) {
        EXPECT_EQ(extended, shorter);
      }
      if (f.op == TemporalOp::kEventually && !shorter.violated()) {
        EXPECT_FALSE(extended.violated());
      }
    }
  }
}

}  // namespace
}  // namespace normagent

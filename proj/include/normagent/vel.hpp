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

// Violation enumeration language (VEL) fragment: a quantifier prefix, one
// temporal operator (G or F) and a possibly negated conjunction of possibly
// negated unary or nullary atoms.
//
// Concrete syntax:
//
//   formula := ("forall" | "exists") VAR "." formula | ("G" | "F") body
//   body    := ["!"] "(" literal ("&" literal)* ")" | literal
//   literal := ["!"] PRED ["(" TERM ")"]
//
// A TERM is a variable when it is bound by the prefix and an object constant
// otherwise. Object constants are only accepted when the caller supplies the
// set of known objects.

#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace normagent {

class VelError : public std::runtime_error {
 public:
  explicit VelError(const std::string& what) : std::runtime_error(what) {}
};

class VelSyntaxError : public VelError {
 public:
  VelSyntaxError(const std::string& what, std::size_t position)
      : VelError(what + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

enum class TermKind { kVariable, kObject };

struct Term {
  TermKind kind = TermKind::kVariable;
  std::string name;

  auto operator<=>(const Term&) const = default;
};

struct Atom {
  std::string predicate;
  std::optional<Term> argument;

  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  Atom atom;
  bool negated = false;

  auto operator<=>(const Literal&) const = default;
};

// Literal order only matters for surface realization.
struct Conjunction {
  std::vector<Literal> literals;
  bool negated = false;

  bool operator==(const Conjunction&) const = default;
};

enum class Quantifier { kForall, kExists };

// G ("always") and F ("eventually").
enum class TemporalOp { kAlways, kEventually };

struct QuantifiedVar {
  Quantifier quantifier = Quantifier::kForall;
  std::string variable;

  bool operator==(const QuantifiedVar&) const = default;
};

struct Formula {
  std::vector<QuantifiedVar> prefix;
  TemporalOp op = TemporalOp::kAlways;
  Conjunction body;

  bool operator==(const Formula&) const = default;
};

// Atom over objects only; the element type of world states.
struct GroundAtom {
  std::string predicate;
  std::optional<std::string> object;

  auto operator<=>(const GroundAtom&) const = default;
};

using AtomSet = std::set<GroundAtom>;

// Assignment of the universally quantified variables of one formula, in
// prefix order.
struct Binding {
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* lookup(std::string_view variable) const;
  bool operator==(const Binding&) const = default;
};

struct GroundInstance {
  Formula source;
  Binding binding;
  std::vector<std::string> existentials;
  // Domain the residual existentials range over.
  std::vector<std::string> objects;
};

enum class VerdictStatus { kSatisfied, kViolated };

struct Verdict {
  VerdictStatus status = VerdictStatus::kSatisfied;
  // First failing step of a violated G-instance.
  std::optional<std::size_t> witness;

  bool violated() const { return status == VerdictStatus::kViolated; }
  bool operator==(const Verdict&) const = default;
};

enum class MonitorStatus { kPending, kSatisfiedForever, kViolatedForever };

struct Monitor {
  std::shared_ptr<const GroundInstance> instance;
  MonitorStatus status = MonitorStatus::kPending;
  std::optional<std::size_t> witness;
  std::size_t steps = 0;
};

// Checks the formula invariants: unique prefix variables, every variable bound
// and used, nonempty body. Throws VelError.
void validate(const Formula& f);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const GroundAtom& a);
std::string print_vel(const Formula& f);

Formula parse_vel(std::string_view text,
                  std::span<const std::string> objects = {});

// Single literal in the concrete syntax; names in `variables` become variable
// terms, names in `objects` object terms.
Literal parse_literal(std::string_view text,
                      std::span<const std::string> variables,
                      std::span<const std::string> objects);

bool alpha_equal(const Formula& a, const Formula& b);

// Variables bound by the prefix with the given quantifier, in prefix order.
std::vector<std::string> variables_of(const Formula& f, Quantifier q);

// Object constants mentioned in the body.
std::set<std::string> constants_of(const Formula& f);

// Substitutes each bound variable of `binding` with its object.
Formula substitute(const Formula& f, const Binding& binding);

std::vector<GroundInstance> ground(const Formula& f,
                                   std::span<const std::string> objects);

// Truth of the body (outer negation included) at one state, existentials
// resolved per state.
bool body_holds(const GroundInstance& inst, const AtomSet& state);

Verdict evaluate(const GroundInstance& inst, std::span<const AtomSet> states);

Monitor compile_monitor(std::shared_ptr<const GroundInstance> inst);
Monitor monitor_step(const Monitor& m, const AtomSet& state);
Verdict monitor_finalize(const Monitor& m);

// Transition of one monitor given the body truth at the next step.
MonitorStatus advance(MonitorStatus status, TemporalOp op, bool holds);
// Verdict status once the trace has ended.
VerdictStatus finalize_status(MonitorStatus status, TemporalOp op);

}  // namespace normagent

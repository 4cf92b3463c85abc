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

// Declarative action domains, state transition and trace rollout.

#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "normagent/lexicon.hpp"
#include "normagent/vel.hpp"

namespace normagent {

class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class RolloutError : public std::runtime_error {
 public:
  RolloutError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}

  // Position of the first inapplicable action.
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct WorldState {
  AtomSet atoms;
  int funds = 0;
  bool terminated = false;

  auto operator<=>(const WorldState&) const = default;
};

struct FluentSignature {
  std::string predicate;
  int arity = 0;  // 0 or 1

  bool operator==(const FluentSignature&) const = default;
};

// Preconditions and effects use the parameter as a variable term.
struct ActionSchema {
  std::string name;
  std::optional<std::string> parameter;
  std::vector<Literal> preconditions;
  std::vector<Atom> add;
  std::vector<Atom> del;
  int cost = 0;
  bool terminal = false;
};

struct GroundAction {
  std::string schema;
  std::optional<std::string> argument;

  auto operator<=>(const GroundAction&) const = default;
};

std::string to_string(const GroundAction& a);

struct NormDecl {
  Formula formula;
  int rank = 0;
};

struct DomainSpec {
  std::vector<std::string> objects;
  std::vector<FluentSignature> fluents;
  std::vector<ActionSchema> actions;
  AtomSet initial_atoms;
  int initial_funds = 0;
  int horizon = 10;
  Lexicon lexicon;
  std::vector<NormDecl> norms;

  WorldState initial_state() const;
  const ActionSchema* find_action(std::string_view name) const;
  const FluentSignature* find_fluent(std::string_view predicate) const;
  // Every ground action in schema declaration order, then object order.
  std::vector<GroundAction> ground_actions() const;
};

struct Trace {
  std::vector<WorldState> states;
  std::vector<GroundAction> actions;

  std::vector<AtomSet> atom_sets() const;
  bool operator==(const Trace&) const = default;
};

// Parses the versioned domain file format; see domains/shopping.domain.
DomainSpec load_domain(std::string_view text);
DomainSpec load_domain_file(const std::filesystem::path& path);

// Checks cross references: fluent arities, effect and norm predicates,
// object constants, ranks, lexicon coverage (when `require_lexicon`).
void validate_domain(const DomainSpec& d, bool require_lexicon = true);

// Checks that every predicate and object constant of `f` is declared.
void check_formula(const Formula& f, const DomainSpec& d);

bool applicable(const WorldState& s, const GroundAction& a,
                const DomainSpec& d);
WorldState apply(const WorldState& s, const GroundAction& a,
                 const DomainSpec& d);
Trace rollout(const DomainSpec& d, const std::vector<GroundAction>& actions);

Verdict evaluate(const GroundInstance& inst, const Trace& trace);

}  // namespace normagent

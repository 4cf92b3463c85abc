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

// Prioritized norms and violation-minimizing planning.
//
// Episodes are compared by their violation vectors: per-norm counts of
// violated ground instances ordered by descending rank, compared
// lexicographically. Among equally good episodes the planner prefers fewer
// actions, then the lexicographically smaller action sequence under schema
// declaration order and object declaration order.

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "normagent/vel.hpp"
#include "normagent/world.hpp"

namespace normagent {

class PlanError : public std::runtime_error {
 public:
  explicit PlanError(const std::string& what) : std::runtime_error(what) {}
};

enum class NormOrigin { kInitial, kUserAdded };

struct Norm {
  Formula formula;
  int rank = 0;  // higher dominates
  NormOrigin origin = NormOrigin::kInitial;
  int insertion_index = 0;

  bool operator==(const Norm&) const = default;
};

// Norms in insertion order. Ranks and insertion indices are unique.
class NormSystem {
 public:
  NormSystem() = default;

  static NormSystem from_domain(const DomainSpec& d);

  const std::vector<Norm>& norms() const { return norms_; }
  std::size_t size() const { return norms_.size(); }
  bool empty() const { return norms_.empty(); }

  int max_rank() const;

  // Appends with rank max_rank() + 1.
  const Norm& add(Formula f, NormOrigin origin = NormOrigin::kUserAdded);
  const Norm& add_ranked(Formula f, int rank, NormOrigin origin);

  // Index of the unique alpha-equal norm, if exactly one exists.
  std::optional<std::size_t> find(const Formula& f) const;
  // Removes the unique alpha-equal norm; false when there is none.
  bool remove(const Formula& f);

  // Insertion-order indices sorted by descending rank.
  std::vector<std::size_t> by_rank() const;

  bool operator==(const NormSystem&) const = default;

 private:
  std::vector<Norm> norms_;
  int next_index_ = 0;
};

// One count per norm, highest rank first.
struct ViolationVector {
  std::vector<int> counts;

  int total() const;
  bool operator==(const ViolationVector&) const = default;
};

// Lexicographic: `less` means `a` is better.
std::strong_ordering compare(const ViolationVector& a,
                             const ViolationVector& b);

struct ViolationReport {
  struct Entry {
    Norm norm;
    std::vector<std::pair<Binding, Verdict>> violated;
  };
  // One entry per norm in insertion order.
  std::vector<Entry> entries;

  std::size_t total() const;
};

struct PlanResult {
  Trace trace;
  ViolationVector vector;
  ViolationReport report;
};

std::pair<ViolationVector, ViolationReport> evaluate_norms(
    const NormSystem& ns, const Trace& t, const DomainSpec& d);

PlanResult plan(const DomainSpec& d, const NormSystem& ns);

// Plans over episodes satisfying every ground instance of `premise`. The
// premise itself is not part of the reported vector.
std::optional<PlanResult> plan_constrained(const DomainSpec& d,
                                           const NormSystem& ns,
                                           const Formula& premise);

struct NormInstance {
  Norm norm;
  Binding binding;
};

struct Regression {
  // Instance the alternative violates at the highest rank where it does worse.
  NormInstance worse;
  // Instance the actual behavior violates at the highest rank where the
  // alternative does better; absent when no such rank exists.
  std::optional<NormInstance> better;
};

// Requires `actual` to be strictly better than `alt`.
Regression worst_regression(const PlanResult& actual, const PlanResult& alt,
                            const NormSystem& ns);

}  // namespace normagent

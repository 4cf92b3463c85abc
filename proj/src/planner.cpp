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

#include "normagent/planner.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>

namespace normagent {

NormSystem NormSystem::from_domain(const DomainSpec& d) {
  NormSystem ns;
  for (const auto& decl : d.norms) {
    ns.add_ranked(decl.formula, decl.rank, NormOrigin::kInitial);
  }
  return ns;
}

int NormSystem::max_rank() const {
  int best = 0;
  for (const auto& n : norms_) best = std::max(best, n.rank);
  return best;
}

const Norm& NormSystem::add(Formula f, NormOrigin origin) {
  return add_ranked(std::move(f), max_rank() + 1, origin);
}

const Norm& NormSystem::add_ranked(Formula f, int rank, NormOrigin origin) {
  validate(f);
  if (rank < 1) throw PlanError("norm ranks must be positive");
  for (const auto& n : norms_) {
    if (n.rank == rank) {
      throw PlanError("rank " + std::to_string(rank) + " already taken");
    }
  }
  norms_.push_back(Norm{std::move(f), rank, origin, next_index_++});
  return norms_.back();
}

std::optional<std::size_t> NormSystem::find(const Formula& f) const {
  std::optional<std::size_t> match;
  for (std::size_t i = 0; i < norms_.size(); ++i) {
    if (!alpha_equal(norms_[i].formula, f)) continue;
    if (match) return std::nullopt;
    match = i;
  }
  return match;
}

bool NormSystem::remove(const Formula& f) {
  auto i = find(f);
  if (!i) return false;
  norms_.erase(norms_.begin() + static_cast<std::ptrdiff_t>(*i));
  return true;
}

std::vector<std::size_t> NormSystem::by_rank() const {
  std::vector<std::size_t> order(norms_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return norms_[a].rank > norms_[b].rank;
  });
  return order;
}

int ViolationVector::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

std::strong_ordering compare(const ViolationVector& a,
                             const ViolationVector& b) {
  if (a.counts.size() != b.counts.size()) {
    throw PlanError("comparing violation vectors of different lengths");
  }
  return a.counts <=> b.counts;
}

std::size_t ViolationReport::total() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.violated.size();
  return n;
}

std::pair<ViolationVector, ViolationReport> evaluate_norms(
    const NormSystem& ns, const Trace& t, const DomainSpec& d) {
  const auto states = t.atom_sets();
  ViolationReport report;
  for (const auto& norm : ns.norms()) {
    ViolationReport::Entry entry{norm, {}};
    for (const auto& inst : ground(norm.formula, d.objects)) {
      Verdict v = evaluate(inst, std::span<const AtomSet>(states));
      if (v.violated()) entry.violated.emplace_back(inst.binding, v);
    }
    report.entries.push_back(std::move(entry));
  }
  ViolationVector vec;
  for (std::size_t i : ns.by_rank()) {
    vec.counts.push_back(static_cast<int>(report.entries[i].violated.size()));
  }
  return {std::move(vec), std::move(report)};
}

namespace {

// Product-space breadth-first search over (world state, monitor statuses).
// Layers are expanded in action order, so the first path reaching a product
// state is the shortest and, among those, the lexicographically smallest;
// later arrivals can be dropped since the future only depends on the product
// state.
class Search {
 public:
  Search(const DomainSpec& d, const NormSystem& ns, const Formula* premise)
      : domain_(d), actions_(d.ground_actions()) {
    std::vector<std::size_t> order = ns.by_rank();
    for (std::size_t slot = 0; slot < order.size(); ++slot) {
      for (auto& inst : ground(ns.norms()[order[slot]].formula, d.objects)) {
        tracked_.push_back(
            {std::make_shared<const GroundInstance>(std::move(inst)), slot});
      }
    }
    slots_ = order.size();
    norm_instances_ = tracked_.size();
    if (premise) {
      for (auto& inst : ground(*premise, d.objects)) {
        tracked_.push_back(
            {std::make_shared<const GroundInstance>(std::move(inst)), 0});
      }
    }
  }

  std::optional<std::vector<GroundAction>> run() {
    struct Node {
      WorldState state;
      std::vector<MonitorStatus> statuses;
      std::ptrdiff_t parent;
      std::size_t action;
    };
    std::vector<Node> nodes;
    std::map<std::pair<WorldState, std::vector<MonitorStatus>>, bool> seen;

    Node root{domain_.initial_state(),
              std::vector<MonitorStatus>(tracked_.size(),
                                         MonitorStatus::kPending),
              -1, 0};
    step(root.statuses, root.state.atoms);
    nodes.push_back(root);
    seen.emplace(std::pair{root.state, root.statuses}, true);

    std::optional<ViolationVector> best_vector;
    std::ptrdiff_t best_node = -1;
    std::vector<std::size_t> frontier{0};
    for (int depth = 0; depth < domain_.horizon && !frontier.empty();
         ++depth) {
      std::vector<std::size_t> next;
      for (std::size_t index : frontier) {
        for (std::size_t a = 0; a < actions_.size(); ++a) {
          const WorldState& from = nodes[index].state;
          if (!applicable(from, actions_[a], domain_)) continue;
          Node child{apply(from, actions_[a], domain_),
                     nodes[index].statuses,
                     static_cast<std::ptrdiff_t>(index), a};
          step(child.statuses, child.state.atoms);
          auto key = std::pair{child.state, child.statuses};
          if (seen.contains(key)) continue;
          seen.emplace(std::move(key), true);
          nodes.push_back(std::move(child));
          std::size_t id = nodes.size() - 1;
          const Node& n = nodes.back();
          if (!n.state.terminated) {
            next.push_back(id);
            continue;
          }
          if (!premise_holds(n.statuses)) continue;
          ViolationVector v = vector_of(n.statuses);
          if (!best_vector || compare(v, *best_vector) < 0) {
            best_vector = std::move(v);
            best_node = static_cast<std::ptrdiff_t>(id);
          }
        }
      }
      frontier = std::move(next);
    }
    if (best_node < 0) return std::nullopt;
    std::vector<GroundAction> path;
    for (std::ptrdiff_t at = best_node; nodes[at].parent >= 0;
         at = nodes[at].parent) {
      path.push_back(actions_[nodes[at].action]);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  struct Tracked {
    std::shared_ptr<const GroundInstance> instance;
    std::size_t slot;
  };

  void step(std::vector<MonitorStatus>& statuses, const AtomSet& atoms) const {
    for (std::size_t i = 0; i < tracked_.size(); ++i) {
      if (statuses[i] != MonitorStatus::kPending) continue;
      const auto& inst = *tracked_[i].instance;
      statuses[i] = advance(statuses[i], inst.source.op, body_holds(inst, atoms));
    }
  }

  bool premise_holds(const std::vector<MonitorStatus>& statuses) const {
    for (std::size_t i = norm_instances_; i < tracked_.size(); ++i) {
      if (finalize_status(statuses[i], tracked_[i].instance->source.op) ==
          VerdictStatus::kViolated) {
        return false;
      }
    }
    return true;
  }

  ViolationVector vector_of(const std::vector<MonitorStatus>& statuses) const {
    ViolationVector v;
    v.counts.assign(slots_, 0);
    for (std::size_t i = 0; i < norm_instances_; ++i) {
      if (finalize_status(statuses[i], tracked_[i].instance->source.op) ==
          VerdictStatus::kViolated) {
        ++v.counts[tracked_[i].slot];
      }
    }
    return v;
  }

  const DomainSpec& domain_;
  std::vector<GroundAction> actions_;
  std::vector<Tracked> tracked_;
  std::size_t slots_ = 0;
  std::size_t norm_instances_ = 0;
};

PlanResult finish(const DomainSpec& d, const NormSystem& ns,
                  const std::vector<GroundAction>& actions) {
  PlanResult result;
  result.trace = rollout(d, actions);
  auto [vec, report] = evaluate_norms(ns, result.trace, d);
  result.vector = std::move(vec);
  result.report = std::move(report);
  return result;
}

}  // namespace

PlanResult plan(const DomainSpec& d, const NormSystem& ns) {
  if (d.horizon < 1) throw PlanError("horizon must be at least 1");
  auto actions = Search(d, ns, nullptr).run();
  if (!actions) {
    throw PlanError("no complete episode within horizon " +
                    std::to_string(d.horizon));
  }
  return finish(d, ns, *actions);
}

std::optional<PlanResult> plan_constrained(const DomainSpec& d,
                                           const NormSystem& ns,
                                           const Formula& premise) {
  if (d.horizon < 1) return std::nullopt;
  auto actions = Search(d, ns, &premise).run();
  if (!actions) return std::nullopt;
  return finish(d, ns, *actions);
}

namespace {

// First violated instance of `entry` in binding order, preferring one that
// the other report does not also violate.
NormInstance pick_instance(const ViolationReport::Entry& entry,
                           const ViolationReport::Entry& other) {
  for (const auto& [binding, verdict] : entry.violated) {
    bool shared = std::any_of(
        other.violated.begin(), other.violated.end(),
        [&](const auto& o) { return o.first == binding; });
    if (!shared) return {entry.norm, binding};
  }
  return {entry.norm, entry.violated.front().first};
}

}  // namespace

Regression worst_regression(const PlanResult& actual, const PlanResult& alt,
                            const NormSystem& ns) {
  if (compare(actual.vector, alt.vector) >= 0) {
    throw PlanError("the alternative is not worse than the actual behavior");
  }
  if (actual.report.entries.size() != ns.size() ||
      alt.report.entries.size() != ns.size()) {
    throw PlanError("reports do not match the norm system");
  }
  std::optional<NormInstance> worse;
  std::optional<NormInstance> better;
  for (std::size_t i : ns.by_rank()) {
    const auto& a = actual.report.entries[i];
    const auto& b = alt.report.entries[i];
    if (!worse && b.violated.size() > a.violated.size()) {
      worse = pick_instance(b, a);
    }
    if (!better && a.violated.size() > b.violated.size()) {
      better = pick_instance(a, b);
    }
  }
  // The comparison above guarantees a rank where the alternative is worse.
  return Regression{*worse, better};
}

}  // namespace normagent

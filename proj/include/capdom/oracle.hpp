#pragma once

// Exact solvers for small instances. These are the ground truth for the
// approximation-ratio and DP-equivalence checks.

#include <cstdint>
#include <optional>
#include <span>

#include "capdom/instance.hpp"

namespace capdom {

struct SearchBudget {
  int64_t max_nodes = 20'000'000;
  // When set, only solutions of cost <= upper_bound are sought and no greedy
  // incumbent is used.
  std::optional<int64_t> upper_bound;
};

enum class SearchStatus {
  Optimal,          // solution is proven optimal
  NoneWithinBound,  // proven: every feasible solution costs > upper_bound
  BudgetExhausted,  // node limit hit; solution (if any) is only an incumbent
};

struct OracleResult {
  SearchStatus status = SearchStatus::Optimal;
  std::optional<Solution> solution;
  int64_t nodes = 0;

  bool proven() const noexcept { return status != SearchStatus::BudgetExhausted; }
};

// Max flow source -> consumer v (cap d(v)) -> server u ∈ N[v] (cap ∞) ->
// sink (cap c(u)·x(u)). Returns an assignment saturating every demand, or
// nullopt when none exists.
std::optional<Assignment> feasibility_flow(const Instance& inst, std::span<const int64_t> multiplicity);

// Branch and bound over server choices, consumers in decreasing-demand order.
// Lower bound at a node with partial loads L(s):
//   max( Σ_s w(s)·⌈L(s)/c(s)⌉ ,
//        ⌈ Σ_s w(s)·L(s)/c(s) + Σ_{v unassigned} d(v)·min_{u∈N[v], c(u)>0} w(u)/c(u) ⌉ )
// Final loads only grow and Σ w·⌈L/c⌉ >= Σ w·L/c, so neither term exceeds the
// cost of any completion. The fractional term is evaluated in long double and
// shaded down by a relative 1e-12 before the ceiling.
// Among optimal solutions the lexicographically smallest multiplicity vector
// is returned. Throws InfeasibleInstance.
OracleResult exact_unsplittable(const Instance& inst, const SearchBudget& budget = {});

// Branch and bound over multiplicity vectors, servers in id order, counts in
// increasing order, each leaf checked with feasibility_flow. Nodes are pruned
// when the relaxation that gives undecided servers unlimited capacity is
// infeasible, or when cost + ⌈deficit·min w/c over undecided servers⌉ exceeds
// the incumbent. Lexicographically smallest optimal vector. Throws
// InfeasibleInstance.
OracleResult exact_splittable(const Instance& inst, const SearchBudget& budget = {});

OracleResult exact_solve(const Instance& inst, DemandModel model, const SearchBudget& budget = {});

}  // namespace capdom

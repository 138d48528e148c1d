#pragma once

// Independent reference solvers and small helpers for the test binaries.
// Nothing here calls into the oracle or DP modules.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "capdom/instance.hpp"

namespace capdom::testing {

Instance make_instance(std::vector<VertexAttrs> attrs, std::vector<Edge> edges);

// The 3-vertex path 1-2-3 with (w,c,d) = (1,1,1), (3,10,1), (1,1,1).
Instance p3();

// Minimum unsplittable cost by enumerating every consumer -> server map.
std::optional<int64_t> brute_unsplittable(const Instance& inst);

// Splittable feasibility of a multiplicity vector by the supply/demand form
// of Hall's theorem: every consumer set S needs d(S) <= Σ_{u∈N[S]} c(u)x(u).
bool hall_feasible(const Instance& inst, std::span<const int64_t> x);

// Minimum splittable cost by enumerating multiplicity vectors.
std::optional<int64_t> brute_splittable(const Instance& inst);

// True iff integer amounts f(v,u) >= 0 over N[v] exist that meet every
// demand within capacities c·x. Enumerates every split of every demand.
bool brute_assignment_exists(const Instance& inst, std::span<const int64_t> x);

// Exact n-th harmonic number H_n = num/den.
struct Fraction {
  int64_t num;
  int64_t den;
};
Fraction harmonic_fraction(int n);

// cost <= (a·H_n + b)·opt, exactly.
bool within_harmonic_bound(int64_t cost, int64_t opt, int n, int64_t a, int64_t b);

}  // namespace capdom::testing

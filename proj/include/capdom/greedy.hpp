#pragma once

// Greedy logarithmic approximations for capacitated domination:
//   greedy_unsplittable           weighted, unsplittable demand, H_n ratio
//   greedy_splittable             weighted, splittable demand, 4·H_n + 2
//   greedy_unweighted_splittable  unit weights, splittable demand, 2·H_n + 1
//
// Every efficiency is an exact fraction compared by cross-multiplication.
// Ties: lowest vertex id among equally efficient vertices; largest prefix
// length among equally good prefixes of one vertex.

#include <map>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "capdom/instance.hpp"

namespace capdom {

using BigInt = boost::multiprecision::cpp_int;

// numerator/denominator kept unreduced. A zero denominator stands for a
// zero-weight server, which is infinitely efficient.
struct EfficiencyQuote {
  Vertex vertex = -1;
  int prefix_len = 0;  // k (unsplittable) or j_u (splittable)
  BigInt numerator = 0;
  BigInt denominator = 1;
};

// a strictly more efficient than b.
bool more_efficient(const EfficiencyQuote& a, const EfficiencyQuote& b);

struct GreedyState {
  // Demand the efficiency is measured against: d(u), or the reset demand
  // after the unweighted pre-pass.
  std::vector<int64_t> base_demand;
  std::vector<int64_t> residue;     // rd(u)
  std::vector<char> undominated;    // U, unsplittable model
  std::vector<std::vector<Vertex>> map_sets;  // servers that partially served u
  std::map<std::pair<Vertex, Vertex>, int64_t> flow;  // (consumer, server) -> amount

  static GreedyState initial(const Instance& inst);
  Assignment assignment() const;
};

// Candidates N_ud[u] in greedy order: closed neighbors still owed demand,
// sorted by base demand, ties by id.
std::vector<Vertex> pending_neighbors(const Instance& inst, const GreedyState& state, Vertex u);

// Best prefix ratio i / (w(u)·⌈Σ_{j≤i} d(v_j)/c(u)⌉). nullopt when c(u) = 0.
// Throws NoCandidates when no undominated closed neighbor remains.
std::optional<EfficiencyQuote> unsplit_efficiency(const Instance& inst, const GreedyState& state,
                                                  Vertex u);

// (X(u) + Y(u)) / w(u) with j_u the longest prefix whose residues fit in one
// copy. nullopt when c(u) = 0. Throws NoCandidates.
std::optional<EfficiencyQuote> split_efficiency(const Instance& inst, const GreedyState& state,
                                                Vertex u);

enum class GreedyPhase { PrePass = 0, FirstChoice = 1, SecondChoice = 2 };

struct TraceStep {
  int iteration = 0;
  GreedyPhase phase = GreedyPhase::FirstChoice;
  // First choice: the server picked. Second choice: the consumer completed.
  // Pre-pass: the server g receiving pre-assigned demand.
  Vertex chosen = -1;
  // k, j_u, |map(u)|, or the number of consumers pre-assigned to g.
  int prefix_len = 0;
  // Cost charged by the step. The final solution never costs more than the
  // sum of charges, because multiplicities are recomputed from total loads.
  int64_t cost = 0;
  // |U| before the step (unsplittable), 0 otherwise.
  int pending_before = 0;
  // rd(·) after the step; for the unsplittable model, d(u) if u ∈ U else 0.
  std::vector<int64_t> residue_after;
};

struct GreedyResult {
  Solution solution;
  std::vector<TraceStep> trace;
  int64_t prepass_cost = 0;           // unweighted algorithm only
  std::vector<int64_t> reset_demand;  // unweighted algorithm only: d after pre-pass
};

// Throw InfeasibleInstance when the feasibility precheck fails.
GreedyResult greedy_unsplittable(const Instance& inst);
GreedyResult greedy_splittable(const Instance& inst);
// Throws NotUnweighted unless every w(u) = 1.
GreedyResult greedy_unweighted_splittable(const Instance& inst);

}  // namespace capdom

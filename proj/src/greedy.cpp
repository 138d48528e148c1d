#include "capdom/greedy.hpp"

#include <algorithm>
#include <stdexcept>

#include "capdom/errors.hpp"
#include "capdom/verify.hpp"

namespace capdom {
namespace {

int64_t ceil_div(int64_t a, int64_t b) { return (a + b - 1) / b; }

void serve(GreedyState& state, Vertex consumer, Vertex server, int64_t amount) {
  state.flow[{consumer, server}] += amount;
  state.residue[consumer] -= amount;
}

bool any_pending(const GreedyState& state) {
  return std::any_of(state.residue.begin(), state.residue.end(),
                     [](int64_t rd) { return rd > 0; });
}

void require_feasible(const Instance& inst) {
  if (!is_feasible(inst)) {
    throw InfeasibleInstance("some vertex with positive demand has no positive-capacity closed neighbor");
  }
}

using QuoteFn = std::optional<EfficiencyQuote> (*)(const Instance&, const GreedyState&, Vertex);

// Most efficient server, lowest id on ties.
EfficiencyQuote pick_server(const Instance& inst, const GreedyState& state, QuoteFn quote) {
  std::optional<EfficiencyQuote> best;
  for (Vertex u = 0; u < inst.num_vertices(); ++u) {
    if (inst.capacity(u) == 0) continue;
    if (pending_neighbors(inst, state, u).empty()) continue;
    auto q = quote(inst, state, u);
    if (q && (!best || more_efficient(*q, *best))) best = std::move(q);
  }
  if (!best) throw InfeasibleInstance("residual demand has no eligible server");
  return *best;
}

// The second greedy choice of the weighted splittable algorithm: a vertex
// left with 0 < rd < d/2 is completed by doubling its assignments to map(v).
void double_assignments(const Instance& inst, GreedyState& state, int iteration,
                        std::vector<TraceStep>& trace) {
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    const int64_t rd = state.residue[v];
    if (rd == 0 || 2 * rd >= state.base_demand[v]) continue;
    int64_t covered = 0;
    for (Vertex s : state.map_sets[v]) covered += state.flow[{v, s}];
    if (covered < rd) {
      throw std::logic_error("doubling cannot cover the residue demand");
    }
    int64_t charge = 0;
    for (Vertex s : state.map_sets[v]) {
      const int64_t extra = state.flow[{v, s}];
      state.flow[{v, s}] += extra;
      charge += inst.weight(s) * ceil_div(extra, inst.capacity(s));
    }
    state.residue[v] = 0;
    trace.push_back({iteration, GreedyPhase::SecondChoice, v,
                     static_cast<int>(state.map_sets[v].size()), charge, 0, state.residue});
  }
}

}  // namespace

bool more_efficient(const EfficiencyQuote& a, const EfficiencyQuote& b) {
  return a.numerator * b.denominator > b.numerator * a.denominator;
}

GreedyState GreedyState::initial(const Instance& inst) {
  const auto n = static_cast<size_t>(inst.num_vertices());
  GreedyState s;
  s.base_demand.resize(n);
  s.residue.resize(n);
  s.undominated.resize(n);
  s.map_sets.resize(n);
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    s.base_demand[v] = inst.demand(v);
    s.residue[v] = inst.demand(v);
    s.undominated[v] = inst.demand(v) > 0;
  }
  return s;
}

Assignment GreedyState::assignment() const {
  Assignment out;
  out.reserve(flow.size());
  for (const auto& [key, amount] : flow) out.push_back({key.first, key.second, amount});
  return out;
}

std::vector<Vertex> pending_neighbors(const Instance& inst, const GreedyState& state, Vertex u) {
  std::vector<Vertex> out;
  for (Vertex v : closed_neighborhood(inst, u)) {
    if (state.residue[v] > 0) out.push_back(v);
  }
  std::stable_sort(out.begin(), out.end(), [&](Vertex a, Vertex b) {
    return state.base_demand[a] < state.base_demand[b];
  });
  return out;
}

std::optional<EfficiencyQuote> unsplit_efficiency(const Instance& inst, const GreedyState& state,
                                                  Vertex u) {
  const int64_t c = inst.capacity(u);
  if (c == 0) return std::nullopt;
  const auto cands = pending_neighbors(inst, state, u);
  if (cands.empty()) throw NoCandidates("no undominated vertex in N[" + std::to_string(u + 1) + "]");
  const int64_t w = inst.weight(u);

  int best_i = 0;
  int64_t best_den = 0;
  int64_t load = 0;
  for (int i = 1; i <= static_cast<int>(cands.size()); ++i) {
    load += state.base_demand[cands[i - 1]];
    const int64_t den = w * ceil_div(load, c);
    // i/den >= best_i/best_den, so later (longer) prefixes win ties.
    if (best_i == 0 ||
        static_cast<__int128>(i) * best_den >= static_cast<__int128>(best_i) * den) {
      best_i = i;
      best_den = den;
    }
  }
  EfficiencyQuote q;
  q.vertex = u;
  q.prefix_len = best_i;
  q.numerator = best_i;
  q.denominator = best_den;
  return q;
}

std::optional<EfficiencyQuote> split_efficiency(const Instance& inst, const GreedyState& state,
                                                Vertex u) {
  const int64_t c = inst.capacity(u);
  if (c == 0) return std::nullopt;
  const auto cands = pending_neighbors(inst, state, u);
  if (cands.empty()) throw NoCandidates("no unsatisfied vertex in N[" + std::to_string(u + 1) + "]");

  size_t j = 0;
  int64_t used = 0;
  while (j < cands.size() && used + state.residue[cands[j]] <= c) {
    used += state.residue[cands[j]];
    ++j;
  }
  const size_t involved = std::min(j + 1, cands.size());

  std::vector<int64_t> denominators;
  for (size_t i = 0; i < involved; ++i) denominators.push_back(state.base_demand[cands[i]]);
  std::sort(denominators.begin(), denominators.end());
  denominators.erase(std::unique(denominators.begin(), denominators.end()), denominators.end());
  BigInt common = 1;
  for (int64_t d : denominators) common *= d;

  EfficiencyQuote q;
  q.vertex = u;
  q.prefix_len = static_cast<int>(j);
  q.numerator = 0;
  for (size_t i = 0; i < j; ++i) {
    q.numerator += BigInt(state.residue[cands[i]]) * (common / state.base_demand[cands[i]]);
  }
  if (j < cands.size()) {
    q.numerator += BigInt(c - used) * (common / state.base_demand[cands[j]]);
  }
  q.denominator = common * inst.weight(u);
  return q;
}

GreedyResult greedy_unsplittable(const Instance& inst) {
  require_feasible(inst);
  GreedyState state = GreedyState::initial(inst);
  GreedyResult result;
  int iteration = 0;
  while (any_pending(state)) {
    ++iteration;
    const int pending_before =
        static_cast<int>(std::count(state.undominated.begin(), state.undominated.end(), 1));
    const EfficiencyQuote q = pick_server(inst, state, &unsplit_efficiency);
    const Vertex u = q.vertex;
    const auto cands = pending_neighbors(inst, state, u);
    int64_t load = 0;
    for (int i = 0; i < q.prefix_len; ++i) {
      const Vertex v = cands[i];
      load += inst.demand(v);
      serve(state, v, u, inst.demand(v));
      state.undominated[v] = 0;
    }
    const int64_t charge = inst.weight(u) * ceil_div(load, inst.capacity(u));
    result.trace.push_back({iteration, GreedyPhase::FirstChoice, u, q.prefix_len, charge,
                            pending_before, state.residue});
  }
  result.solution = minimum_multiplicities(inst, state.assignment());
  return result;
}

GreedyResult greedy_splittable(const Instance& inst) {
  require_feasible(inst);
  GreedyState state = GreedyState::initial(inst);
  GreedyResult result;
  int iteration = 0;
  while (any_pending(state)) {
    ++iteration;
    const EfficiencyQuote q = pick_server(inst, state, &split_efficiency);
    const Vertex u = q.vertex;
    const int64_t c = inst.capacity(u);
    const auto cands = pending_neighbors(inst, state, u);
    int64_t charge = 0;
    if (q.prefix_len == 0) {
      // One copy cannot absorb v's residue, so buy as many whole copies as fit.
      const Vertex v = cands.front();
      const int64_t rd = state.residue[v];
      if (rd <= c) throw std::logic_error("j_u = 0 with rd(v_u1) <= c(u)");
      const int64_t copies = rd / c;
      serve(state, v, u, copies * c);
      state.map_sets[v] = {u};
      charge = inst.weight(u) * copies;
    } else {
      int64_t used = 0;
      for (int i = 0; i < q.prefix_len; ++i) {
        used += state.residue[cands[i]];
        serve(state, cands[i], u, state.residue[cands[i]]);
      }
      if (q.prefix_len < static_cast<int>(cands.size()) && c > used) {
        const Vertex v = cands[q.prefix_len];
        serve(state, v, u, c - used);
        auto& m = state.map_sets[v];
        if (std::find(m.begin(), m.end(), u) == m.end()) m.push_back(u);
      }
      charge = inst.weight(u);
    }
    result.trace.push_back({iteration, GreedyPhase::FirstChoice, u, q.prefix_len, charge, 0,
                            state.residue});
    double_assignments(inst, state, iteration, result.trace);
  }
  result.solution = minimum_multiplicities(inst, state.assignment());
  return result;
}

GreedyResult greedy_unweighted_splittable(const Instance& inst) {
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    if (inst.weight(v) != 1) {
      throw NotUnweighted("vertex " + std::to_string(v + 1) + " has weight " +
                          std::to_string(inst.weight(v)) + ", expected 1");
    }
  }
  require_feasible(inst);
  const int n = inst.num_vertices();

  // g_u: largest capacity in N[u], lowest id on ties.
  std::vector<Vertex> best_server(n);
  for (Vertex u = 0; u < n; ++u) {
    Vertex g = u;
    for (Vertex v : closed_neighborhood(inst, u)) {
      if (inst.capacity(v) > inst.capacity(g) ||
          (inst.capacity(v) == inst.capacity(g) && v < g)) {
        g = v;
      }
    }
    best_server[u] = g;
  }

  GreedyState state = GreedyState::initial(inst);
  GreedyResult result;

  std::vector<int64_t> prepass_load(n, 0);
  std::vector<int> prepass_consumers(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    if (inst.demand(u) == 0) continue;
    const Vertex g = best_server[u];
    const int64_t cg = inst.capacity(g);
    const int64_t amount = cg * (inst.demand(u) / cg);
    if (amount == 0) continue;
    serve(state, u, g, amount);
    prepass_load[g] += amount;
    ++prepass_consumers[g];
  }
  for (Vertex g = 0; g < n; ++g) {
    if (prepass_load[g] == 0) continue;
    const int64_t copies = prepass_load[g] / inst.capacity(g);
    result.prepass_cost += copies;
    result.trace.push_back({0, GreedyPhase::PrePass, g, prepass_consumers[g], copies, 0,
                            state.residue});
  }
  state.base_demand = state.residue;
  result.reset_demand = state.residue;

  int iteration = 0;
  while (any_pending(state)) {
    ++iteration;
    const EfficiencyQuote q = pick_server(inst, state, &split_efficiency);
    const Vertex u = q.vertex;
    const int64_t c = inst.capacity(u);
    const auto cands = pending_neighbors(inst, state, u);
    // Every pending v fits in one copy of g_v, whose efficiency is >= 1,
    // while a j_u = 0 quote is below 1.
    if (q.prefix_len == 0) throw std::logic_error("j_u = 0 after the unweighted pre-pass");
    int64_t used = 0;
    for (int i = 0; i < q.prefix_len; ++i) {
      used += state.residue[cands[i]];
      serve(state, cands[i], u, state.residue[cands[i]]);
    }
    if (q.prefix_len < static_cast<int>(cands.size()) && c > used) {
      serve(state, cands[q.prefix_len], u, c - used);
    }
    result.trace.push_back({iteration, GreedyPhase::FirstChoice, u, q.prefix_len, 1, 0,
                            state.residue});

    for (Vertex v = 0; v < n; ++v) {
      const int64_t rd = state.residue[v];
      if (rd == 0 || rd >= state.base_demand[v]) continue;
      const Vertex g = best_server[v];
      serve(state, v, g, rd);
      result.trace.push_back({iteration, GreedyPhase::SecondChoice, v, 1,
                              ceil_div(rd, inst.capacity(g)), 0, state.residue});
    }
  }
  result.solution = minimum_multiplicities(inst, state.assignment());
  return result;
}

}  // namespace capdom

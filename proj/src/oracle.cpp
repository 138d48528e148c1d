#include "capdom/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "capdom/errors.hpp"
#include "capdom/greedy.hpp"
#include "capdom/max_flow.hpp"
#include "capdom/verify.hpp"

namespace capdom {
namespace {

int64_t ceil_div(int64_t a, int64_t b) { return (a + b - 1) / b; }

// ⌈value⌉ after shading value down, so rounding error never overstates a bound.
int64_t safe_ceil(long double value) {
  const long double shaded = value - std::fabs(value) * 1e-12L - 1e-9L;
  return static_cast<int64_t>(std::ceil(shaded));
}

void require_feasible(const Instance& inst) {
  if (!is_feasible(inst)) {
    throw InfeasibleInstance("some vertex with positive demand has no positive-capacity closed neighbor");
  }
}

// Incumbent bookkeeping shared by both searches.
struct Incumbent {
  int64_t cost = std::numeric_limits<int64_t>::max();
  std::optional<Solution> solution;
  // An incumbent supplied from outside the search (greedy, or the caller's
  // bound) is replaced by any search leaf of equal cost.
  bool from_search = false;

  bool accepts(int64_t leaf_cost, const std::vector<int64_t>& x) const {
    if (leaf_cost < cost) return true;
    if (leaf_cost > cost) return false;
    if (!from_search) return true;
    return solution && x < solution->multiplicity;
  }
};

class UnsplitSearch {
 public:
  UnsplitSearch(const Instance& inst, const SearchBudget& budget)
      : inst_(inst), budget_(budget), load_(inst.num_vertices(), 0) {
    for (Vertex v = 0; v < inst.num_vertices(); ++v) {
      if (inst.demand(v) > 0) consumers_.push_back(v);
    }
    std::stable_sort(consumers_.begin(), consumers_.end(), [&](Vertex a, Vertex b) {
      return inst.demand(a) > inst.demand(b);
    });
    options_.resize(consumers_.size());
    suffix_bound_.assign(consumers_.size() + 1, 0.0L);
    for (size_t i = 0; i < consumers_.size(); ++i) {
      const Vertex v = consumers_[i];
      for (Vertex u : closed_neighborhood(inst, v)) {
        if (inst.capacity(u) > 0) options_[i].push_back(u);
      }
    }
    for (size_t i = consumers_.size(); i-- > 0;) {
      const Vertex v = consumers_[i];
      long double rate = std::numeric_limits<long double>::infinity();
      for (Vertex u : options_[i]) {
        rate = std::min(rate, static_cast<long double>(inst.weight(u)) / inst.capacity(u));
      }
      suffix_bound_[i] = suffix_bound_[i + 1] + rate * inst.demand(v);
    }
    choice_.assign(consumers_.size(), -1);
  }

  OracleResult run() {
    if (budget_.upper_bound) {
      best_.cost = *budget_.upper_bound;
    } else {
      GreedyResult g = greedy_unsplittable(inst_);
      best_.cost = g.solution.cost;
      best_.solution = std::move(g.solution);
    }
    descend(0, 0, 0.0L);
    OracleResult out;
    out.nodes = nodes_;
    out.solution = best_.solution;
    if (exhausted_) {
      out.status = SearchStatus::BudgetExhausted;
    } else if (!best_.solution) {
      out.status = SearchStatus::NoneWithinBound;
    } else {
      out.status = SearchStatus::Optimal;
    }
    return out;
  }

 private:
  int64_t copies(Vertex s, int64_t load) const { return ceil_div(load, inst_.capacity(s)); }

  void descend(size_t i, int64_t cost, long double fractional) {
    if (exhausted_) return;
    if (++nodes_ > budget_.max_nodes) {
      exhausted_ = true;
      return;
    }
    if (i == consumers_.size()) {
      std::vector<int64_t> x(load_.size(), 0);
      for (Vertex s = 0; s < inst_.num_vertices(); ++s) {
        if (load_[s] > 0) x[s] = copies(s, load_[s]);
      }
      if (best_.accepts(cost, x)) {
        Assignment a;
        for (size_t k = 0; k < consumers_.size(); ++k) {
          a.push_back({consumers_[k], choice_[k], inst_.demand(consumers_[k])});
        }
        best_.cost = cost;
        best_.solution = minimum_multiplicities(inst_, std::move(a));
        best_.from_search = true;
      }
      return;
    }
    const Vertex v = consumers_[i];
    const int64_t d = inst_.demand(v);
    for (Vertex s : options_[i]) {
      const int64_t before = copies(s, load_[s]);
      load_[s] += d;
      const int64_t next_cost = cost + inst_.weight(s) * (copies(s, load_[s]) - before);
      const long double next_frac =
          fractional + static_cast<long double>(inst_.weight(s)) * d / inst_.capacity(s);
      const int64_t bound = std::max(next_cost, safe_ceil(next_frac + suffix_bound_[i + 1]));
      if (bound <= best_.cost) {
        choice_[i] = s;
        descend(i + 1, next_cost, next_frac);
      }
      load_[s] -= d;
      if (exhausted_) return;
    }
  }

  const Instance& inst_;
  const SearchBudget& budget_;
  std::vector<Vertex> consumers_;
  std::vector<std::vector<Vertex>> options_;
  std::vector<long double> suffix_bound_;
  std::vector<int64_t> load_;
  std::vector<Vertex> choice_;
  Incumbent best_;
  int64_t nodes_ = 0;
  bool exhausted_ = false;
};

class SplitSearch {
 public:
  SplitSearch(const Instance& inst, const SearchBudget& budget)
      : inst_(inst), budget_(budget), x_(inst.num_vertices(), 0) {
    total_demand_ = inst.total_demand();
    for (Vertex s = 0; s < inst.num_vertices(); ++s) {
      if (inst.capacity(s) == 0) continue;
      int64_t reach = 0;
      for (Vertex v : closed_neighborhood(inst, s)) reach += inst.demand(v);
      if (reach == 0) continue;
      servers_.push_back(s);
      max_copies_.push_back(ceil_div(reach, inst.capacity(s)));
    }
    // min w/c over servers_[i..]
    suffix_rate_.assign(servers_.size() + 1, std::numeric_limits<long double>::infinity());
    for (size_t i = servers_.size(); i-- > 0;) {
      const Vertex s = servers_[i];
      suffix_rate_[i] = std::min(suffix_rate_[i + 1],
                                 static_cast<long double>(inst.weight(s)) / inst.capacity(s));
    }
  }

  OracleResult run() {
    if (budget_.upper_bound) {
      best_.cost = *budget_.upper_bound;
    } else {
      GreedyResult g = greedy_splittable(inst_);
      best_.cost = g.solution.cost;
      best_.solution = std::move(g.solution);
    }
    descend(0, 0);
    OracleResult out;
    out.nodes = nodes_;
    out.solution = best_.solution;
    if (exhausted_) {
      out.status = SearchStatus::BudgetExhausted;
    } else if (!best_.solution) {
      out.status = SearchStatus::NoneWithinBound;
    } else {
      out.status = SearchStatus::Optimal;
    }
    return out;
  }

 private:
  // Max flow with servers_[0..decided) at c·x and the rest at `open_cap`.
  int64_t flow_value(size_t decided, int64_t open_cap) const {
    const int n = inst_.num_vertices();
    MaxFlow net(2 * n + 2);
    const int source = 2 * n;
    const int sink = 2 * n + 1;
    for (Vertex v = 0; v < n; ++v) {
      if (inst_.demand(v) == 0) continue;
      net.add_arc(source, v, inst_.demand(v));
      for (Vertex u : closed_neighborhood(inst_, v)) {
        if (inst_.capacity(u) > 0) net.add_arc(v, n + u, total_demand_);
      }
    }
    for (size_t i = 0; i < servers_.size(); ++i) {
      const Vertex s = servers_[i];
      const int64_t cap = i < decided ? inst_.capacity(s) * x_[s] : open_cap;
      if (cap > 0) net.add_arc(n + s, sink, cap);
    }
    return net.solve(source, sink);
  }

  void descend(size_t i, int64_t cost) {
    if (exhausted_) return;
    if (++nodes_ > budget_.max_nodes) {
      exhausted_ = true;
      return;
    }
    if (cost > best_.cost) return;
    if (flow_value(i, total_demand_) < total_demand_) return;
    const int64_t deficit = total_demand_ - flow_value(i, 0);
    if (i == servers_.size()) {
      if (deficit > 0) return;
      if (best_.accepts(cost, x_)) {
        auto assignment = feasibility_flow(inst_, x_);
        Solution sol;
        sol.multiplicity = x_;
        sol.assignment = std::move(*assignment);
        sol.cost = cost;
        best_.cost = cost;
        best_.solution = std::move(sol);
        best_.from_search = true;
      }
      return;
    }
    if (deficit > 0 && cost + safe_ceil(deficit * suffix_rate_[i]) > best_.cost) return;

    const Vertex s = servers_[i];
    for (int64_t copies = 0; copies <= max_copies_[i]; ++copies) {
      const int64_t next_cost = cost + inst_.weight(s) * copies;
      if (next_cost > best_.cost) break;
      x_[s] = copies;
      descend(i + 1, next_cost);
      if (exhausted_) break;
    }
    x_[s] = 0;
  }

  const Instance& inst_;
  const SearchBudget& budget_;
  int64_t total_demand_ = 0;
  std::vector<Vertex> servers_;
  std::vector<int64_t> max_copies_;
  std::vector<long double> suffix_rate_;
  std::vector<int64_t> x_;
  Incumbent best_;
  int64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

std::optional<Assignment> feasibility_flow(const Instance& inst, std::span<const int64_t> multiplicity) {
  const int n = inst.num_vertices();
  const int64_t total = inst.total_demand();
  MaxFlow net(2 * n + 2);
  const int source = 2 * n;
  const int sink = 2 * n + 1;
  struct Link {
    Vertex consumer, server;
    int arc;
  };
  std::vector<Link> links;
  for (Vertex v = 0; v < n; ++v) {
    if (inst.demand(v) == 0) continue;
    net.add_arc(source, v, inst.demand(v));
    for (Vertex u : closed_neighborhood(inst, v)) {
      links.push_back({v, u, net.add_arc(v, n + u, total)});
    }
  }
  for (Vertex u = 0; u < n; ++u) {
    const __int128 cap = static_cast<__int128>(inst.capacity(u)) * multiplicity[u];
    if (cap > 0) net.add_arc(n + u, sink, static_cast<int64_t>(std::min<__int128>(cap, total)));
  }
  if (net.solve(source, sink) < total) return std::nullopt;
  Assignment out;
  for (const Link& l : links) {
    if (const int64_t f = net.flow_on(l.arc); f > 0) out.push_back({l.consumer, l.server, f});
  }
  normalize(out);
  return out;
}

OracleResult exact_unsplittable(const Instance& inst, const SearchBudget& budget) {
  require_feasible(inst);
  return UnsplitSearch(inst, budget).run();
}

OracleResult exact_splittable(const Instance& inst, const SearchBudget& budget) {
  require_feasible(inst);
  return SplitSearch(inst, budget).run();
}

OracleResult exact_solve(const Instance& inst, DemandModel model, const SearchBudget& budget) {
  return model == DemandModel::Splittable ? exact_splittable(inst, budget)
                                          : exact_unsplittable(inst, budget);
}

}  // namespace capdom

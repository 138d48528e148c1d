#include "capdom/baker.hpp"

#include <algorithm>

#include "capdom/errors.hpp"
#include "capdom/td_dp.hpp"

namespace capdom {
namespace {

Slice build_slice(const Instance& inst, const LevelAssignment& levels, int first, int last, int keep_first,
                  int keep_last) {
  Slice slice;
  slice.first_level = first;
  slice.last_level = last;
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    if (levels.level[v] >= first && levels.level[v] <= last) slice.vertices.push_back(v);
  }
  std::vector<VertexAttrs> attrs;
  for (Vertex v : slice.vertices) {
    VertexAttrs a = inst.attrs(v);
    if (levels.level[v] < keep_first || levels.level[v] > keep_last) {
      if (a.demand > 0) slice.zeroed.push_back(v);
      a.demand = 0;
    }
    attrs.push_back(a);
  }
  slice.instance = inst.induced(slice.vertices).with_attrs(std::move(attrs));
  return slice;
}

// Cheapest merged solution over all shifts for one connected instance.
struct ComponentRun {
  std::vector<int64_t> shift_costs;
  Solution best;
  int num_levels = 0;
};

ComponentRun solve_component(const Instance& comp, int k, DemandModel model, Execution exec) {
  const LevelAssignment levels = bfs_levels(comp, 0);
  std::vector<Solution> merged(k);
  for_each_index(k, exec, [&](int r) {
    const std::vector<Slice> slices = make_slices(comp, levels, k, r);
    std::vector<Solution> parts;
    parts.reserve(slices.size());
    for (const Slice& s : slices) parts.push_back(solve_td(s.instance, model));
    merged[r] = merge_solutions(comp, slices, parts);
  });
  ComponentRun run;
  run.num_levels = levels.num_levels;
  int best = 0;
  for (int r = 0; r < k; ++r) {
    run.shift_costs.push_back(merged[r].cost);
    if (merged[r].cost < merged[best].cost) best = r;
  }
  run.best = std::move(merged[best]);
  return run;
}

}  // namespace

LevelAssignment bfs_levels(const Instance& inst, Vertex root) {
  LevelAssignment out;
  const int n = inst.num_vertices();
  out.level.assign(n, -1);
  if (n == 0) return out;
  if (root < 0 || root >= n) throw InvalidInput("BFS root out of range");
  std::vector<Vertex> queue{root};
  out.level[root] = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (Vertex u : inst.neighbors(v)) {
      if (out.level[u] < 0) {
        out.level[u] = out.level[v] + 1;
        queue.push_back(u);
      }
    }
  }
  if (static_cast<int>(queue.size()) != n) {
    throw Disconnected("instance is disconnected; levels need one root per component");
  }
  out.num_levels = out.level[queue.back()] + 1;
  return out;
}

std::vector<Slice> make_slices(const Instance& inst, const LevelAssignment& levels, int k, int r) {
  if (k < 2) throw InvalidInput("k must be at least 2");
  if (r < 0 || r >= k) throw InvalidInput("shift r must lie in [0, k)");
  const int m = levels.num_levels;
  std::vector<Slice> slices;
  if (m == 0) return slices;
  if (m <= k) {
    slices.push_back(build_slice(inst, levels, 0, m - 1, 0, m - 1));
    return slices;
  }
  for (int j = 0;; ++j) {
    const int keep_first = std::max((j - 1) * k + r + 1, 0);
    const int keep_last = std::min(j * k + r, m - 1);
    if (keep_first > m - 1) break;
    if (keep_first > keep_last) continue;
    slices.push_back(build_slice(inst, levels, std::max(keep_first - 1, 0), std::min(keep_last + 1, m - 1),
                                 keep_first, keep_last));
  }
  return slices;
}

Solution merge_solutions(const Instance& inst, std::span<const Slice> slices, std::span<const Solution> solutions) {
  if (slices.size() != solutions.size()) throw InvalidInput("one solution per slice expected");
  Solution out;
  out.multiplicity.assign(inst.num_vertices(), 0);
  std::vector<int> owner(inst.num_vertices(), -1);
  for (size_t s = 0; s < slices.size(); ++s) {
    const auto& ids = slices[s].vertices;
    const Solution& part = solutions[s];
    for (size_t i = 0; i < ids.size(); ++i) out.multiplicity[ids[i]] += part.multiplicity[i];
    for (const Triple& t : part.assignment) {
      const Vertex consumer = ids[t.consumer];
      if (owner[consumer] >= 0 && owner[consumer] != static_cast<int>(s)) {
        throw MergeConflict("vertex " + std::to_string(consumer + 1) + " is served in two slices");
      }
      owner[consumer] = static_cast<int>(s);
      out.assignment.push_back({consumer, ids[t.server], t.amount});
    }
  }
  normalize(out.assignment);
  out.cost = solution_cost(inst, out.multiplicity);
  return out;
}

BakerResult baker_solve(const Instance& inst, int k, DemandModel model, Execution exec) {
  if (k < 2) throw InvalidInput("k must be at least 2");
  BakerResult result;
  result.shift_costs.assign(k, 0);
  result.solution.multiplicity.assign(inst.num_vertices(), 0);
  for (const auto& comp : connected_components(inst)) {
    const ComponentRun run = solve_component(inst.induced(comp), k, model, exec);
    result.num_levels = std::max(result.num_levels, run.num_levels);
    for (int r = 0; r < k; ++r) result.shift_costs[r] += run.shift_costs[r];
    for (size_t i = 0; i < comp.size(); ++i) result.solution.multiplicity[comp[i]] += run.best.multiplicity[i];
    for (const Triple& t : run.best.assignment) {
      result.solution.assignment.push_back({comp[t.consumer], comp[t.server], t.amount});
    }
  }
  normalize(result.solution.assignment);
  result.solution.cost = solution_cost(inst, result.solution.multiplicity);
  return result;
}

}  // namespace capdom

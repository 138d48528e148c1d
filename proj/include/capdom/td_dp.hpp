#pragma once

// Exact dynamic program over a nice tree decomposition.
//
// A row describes the partial solution of the subtree below a node, seen
// through its bag. For each bag vertex u it stores
//   need(u): demand of u not yet assigned to any server in the subtree,
//   rc(u):   spare capacity of the copies of u bought so far, in [0, c(u)).
// In the unsplittable model need(u) is either d(u) (u unserved) or 0.

#include <cstdint>
#include <vector>

#include "capdom/instance.hpp"
#include "capdom/treewidth.hpp"

namespace capdom {

struct DpRow {
  std::vector<int64_t> need;  // by bag position
  std::vector<int64_t> rc;    // by bag position
  int64_t cost = 0;
  // Rows of the child tables this row was built from, and the assignment
  // triples added at this node.
  int left = -1;
  int right = -1;
  Assignment added;
};

// Tables hold one row per (need, rc) configuration and keep only rows not
// dominated by another row with no more need, at least as much spare
// capacity at each position, and no higher cost.
struct DpTable {
  std::vector<Vertex> bag;  // sorted
  std::vector<DpRow> rows;

  const DpRow* find(const std::vector<int64_t>& need, const std::vector<int64_t>& rc) const;
};

// Buys just enough copies of a server with spare `rc` to absorb `amount`.
// Returns the number of copies bought and updates rc.
int64_t absorb(int64_t& rc, int64_t amount, int64_t capacity);

DpTable dp_leaf(const Instance& inst, Vertex v, DemandModel model);
// Adds v to the child's bag. v may serve bag neighbours that still have
// need, and v's own demand may go to v or to any bag neighbour.
DpTable dp_introduce(const Instance& inst, const DpTable& child, Vertex v, DemandModel model);
// Keeps rows in which v is fully served. Throws EmptyTable.
DpTable dp_forget(const DpTable& child, Vertex v);
// Pairs every two rows; need becomes max(0, need1 + need2 - d), so a vertex
// served in both subtrees is allowed and the surplus is trimmed when the
// solution is rebuilt. Spare capacities are pooled and whole copies refunded
// at w(u).
DpTable dp_join(const Instance& inst, const DpTable& left, const DpTable& right);

struct DpStats {
  int64_t nodes = 0;
  int64_t total_rows = 0;
  int64_t max_rows = 0;
  // Every table stayed within 2^|bag|·Π max(c,1) (unsplittable) or
  // Π (d+1)·Π max(c,1) (splittable).
  bool within_bounds = true;
};

// Minimum-cost solution, reconstructed from the table back-pointers.
// Throws InvalidInput if `ntd` is not a nice decomposition of `inst`, and
// InfeasibleInstance when no row reaches the root.
Solution solve_td(const Instance& inst, const NiceTreeDecomposition& ntd, DemandModel model,
                  DpStats* stats = nullptr);

// solve_td on make_nice(heuristic_decomposition(inst)).
Solution solve_td(const Instance& inst, DemandModel model, DpStats* stats = nullptr);

}  // namespace capdom

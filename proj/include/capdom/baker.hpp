#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "capdom/instance.hpp"
#include "capdom/parallel.hpp"

namespace capdom {

struct LevelAssignment {
  std::vector<int> level;  // BFS distance from the root, by vertex
  int num_levels = 0;
};

// Throws Disconnected if some vertex is unreachable from `root`.
LevelAssignment bfs_levels(const Instance& inst, Vertex root);

struct Slice {
  std::vector<Vertex> vertices;  // original ids, sorted; slice vertex i is vertices[i]
  Instance instance;             // induced subgraph, boundary demands zeroed
  int first_level = 0;           // span, inclusive
  int last_level = 0;
  std::vector<Vertex> zeroed;    // original ids whose demand was dropped
};

// Slice j keeps the demands of levels (j-1)k+r+1 .. jk+r and spans one
// extra level on each side. Slices without a kept level are omitted; when
// there are at most k levels the single slice is the whole instance.
std::vector<Slice> make_slices(const Instance& inst, const LevelAssignment& levels, int k, int r);

// Sums multiplicities and concatenates assignments (mapped to original ids).
// Throws MergeConflict when one consumer is served in two slices.
Solution merge_solutions(const Instance& inst, std::span<const Slice> slices,
                         std::span<const Solution> solutions);

struct BakerResult {
  Solution solution;
  // Merged cost of each shift r, summed over connected components.
  std::vector<int64_t> shift_costs;
  // Largest level count over components.
  int num_levels = 0;
};

// Each component is levelled by BFS from its lowest vertex; every shift is
// solved slice by slice with the tree-decomposition DP, and the cheapest
// shift (lowest r on ties) is kept per component.
BakerResult baker_solve(const Instance& inst, int k, DemandModel model,
                        Execution exec = Execution::Parallel);

}  // namespace capdom

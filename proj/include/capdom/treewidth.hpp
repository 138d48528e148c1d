#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "capdom/instance.hpp"

namespace capdom {

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;  // each sorted
  std::vector<std::pair<int, int>> tree_edges;

  // max bag size - 1; -1 when there are no bags.
  int width() const;
};

struct TdReport {
  std::vector<std::string> failures;

  bool passed() const noexcept { return failures.empty(); }
};

// Checks that the bag graph is a tree, every vertex is in a bag, every edge
// is inside a bag, and the bags of each vertex form a connected subtree.
TdReport validate_td(const Instance& inst, const TreeDecomposition& td);

enum class EliminationHeuristic { MinFill, MinDegree };

// Decomposition from a greedy elimination ordering (ties by vertex id).
// Bags contained in an adjacent bag are contracted away.
TreeDecomposition heuristic_decomposition(const Instance& inst,
                                          EliminationHeuristic heuristic = EliminationHeuristic::MinFill);

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
  NiceKind kind = NiceKind::Leaf;
  std::vector<Vertex> bag;  // sorted
  Vertex vertex = -1;       // introduced/forgotten vertex; the leaf's vertex
  std::vector<int> children;
};

struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;  // -1 for the empty decomposition

  int width() const;
  // Children before parents.
  std::vector<int> post_order() const;
  // Bags and parent-child edges as a plain decomposition.
  TreeDecomposition project() const;
};

// Rooted at the bag holding the lowest vertex id; adjacent bags are bridged
// by forget-then-introduce chains, nodes with several children get a binary
// join spine, and a forget chain above the root empties the root bag.
// Throws InvalidInput when `td` is not a tree decomposition.
NiceTreeDecomposition make_nice(const TreeDecomposition& td);

// Structural check of the nice-node typing rules; empty string when valid.
std::string check_nice_structure(const NiceTreeDecomposition& ntd);

// PACE 2017 .td format:
//   s td <#bags> <max_bag_size> <n>
//   b <id> <v...>
//   <id> <id>
TreeDecomposition load_td(std::istream& in);
void save_td(const TreeDecomposition& td, int num_vertices, std::ostream& out);

void save_nice(const NiceTreeDecomposition& ntd, std::ostream& out);

}  // namespace capdom

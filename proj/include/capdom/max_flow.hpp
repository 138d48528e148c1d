#pragma once

#include <cstdint>
#include <vector>

namespace capdom {

// Dinic's algorithm on an explicit residual graph, integral capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);

  // Returns the arc id, usable with flow_on().
  int add_arc(int from, int to, int64_t capacity);
  int64_t solve(int source, int sink);
  int64_t flow_on(int arc) const;

 private:
  struct Arc {
    int to;
    int64_t residual;
    int64_t capacity;
  };

  bool build_levels(int source, int sink);
  int64_t push(int v, int sink, int64_t limit);

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<int> level_;
  std::vector<size_t> next_;
};

}  // namespace capdom

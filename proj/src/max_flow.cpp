#include "capdom/max_flow.hpp"

#include <algorithm>
#include <limits>

namespace capdom {

MaxFlow::MaxFlow(int num_nodes) : out_(num_nodes), level_(num_nodes), next_(num_nodes) {}

int MaxFlow::add_arc(int from, int to, int64_t capacity) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, capacity});
  arcs_.push_back({from, 0, 0});
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  return id;
}

int64_t MaxFlow::flow_on(int arc) const { return arcs_[arc].capacity - arcs_[arc].residual; }

bool MaxFlow::build_levels(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::vector<int> queue{source};
  level_[source] = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int id : out_[v]) {
      const Arc& a = arcs_[id];
      if (a.residual > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        queue.push_back(a.to);
      }
    }
  }
  return level_[sink] >= 0;
}

int64_t MaxFlow::push(int v, int sink, int64_t limit) {
  if (v == sink) return limit;
  for (size_t& i = next_[v]; i < out_[v].size(); ++i) {
    const int id = out_[v][i];
    Arc& a = arcs_[id];
    if (a.residual <= 0 || level_[a.to] != level_[v] + 1) continue;
    const int64_t pushed = push(a.to, sink, std::min(limit, a.residual));
    if (pushed > 0) {
      a.residual -= pushed;
      arcs_[id ^ 1].residual += pushed;
      return pushed;
    }
  }
  return 0;
}

int64_t MaxFlow::solve(int source, int sink) {
  int64_t total = 0;
  while (build_levels(source, sink)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (int64_t f = push(source, sink, std::numeric_limits<int64_t>::max())) total += f;
  }
  return total;
}

}  // namespace capdom

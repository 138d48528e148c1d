#include "capdom/instance.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "capdom/errors.hpp"

namespace capdom {
namespace {

constexpr __int128 kInt64Max = std::numeric_limits<int64_t>::max();

std::string vertex_name(Vertex v) { return std::to_string(v + 1); }

// Σd, Σc·n and Σw·Σd must all fit in int64_t. Every load, copy count and
// cost any solver forms is bounded by one of these.
void audit_magnitudes(std::span<const VertexAttrs> attrs) {
  __int128 sum_w = 0;
  __int128 sum_c = 0;
  __int128 sum_d = 0;
  for (const VertexAttrs& a : attrs) {
    sum_w += a.weight;
    sum_c += a.capacity;
    sum_d += a.demand;
    if (sum_w > kInt64Max || sum_c > kInt64Max || sum_d > kInt64Max) {
      throw OverflowError("attribute sums exceed the 64-bit budget");
    }
  }
  const __int128 n = static_cast<__int128>(attrs.size());
  if (sum_c * n > kInt64Max) {
    throw OverflowError("capacity sum times vertex count exceeds 64 bits");
  }
  // Both factors are below 2^63, so the product cannot overflow __int128.
  if (sum_w * sum_d > kInt64Max) {
    throw OverflowError("weight sum times demand sum exceeds 64 bits");
  }
}

}  // namespace

Instance::Instance(std::vector<VertexAttrs> attrs, std::span<const Edge> edges)
    : attrs_(std::move(attrs)), adj_(attrs_.size()) {
  const int n = num_vertices();
  for (int v = 0; v < n; ++v) {
    const VertexAttrs& a = attrs_[v];
    if (a.weight < 0 || a.capacity < 0 || a.demand < 0) {
      throw InvalidInput("vertex " + vertex_name(v) + " has a negative attribute");
    }
  }
  audit_magnitudes(attrs_);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw InvalidInput("edge endpoint out of range");
    }
    if (u == v) {
      throw InvalidInput("self-loop at vertex " + vertex_name(u));
    }
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& list = adj_[v];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw InvalidInput("parallel edge at vertex " + vertex_name(v));
    }
  }
  num_edges_ = static_cast<int64_t>(edges.size());
}

bool Instance::adjacent(Vertex u, Vertex v) const {
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

bool Instance::in_closed_neighborhood(Vertex center, Vertex u) const {
  return center == u || adjacent(center, u);
}

std::vector<Edge> Instance::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<size_t>(num_edges_));
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

int64_t Instance::total_demand() const {
  int64_t total = 0;
  for (const VertexAttrs& a : attrs_) total += a.demand;
  return total;
}

Instance Instance::induced(std::span<const Vertex> vertices) const {
  std::vector<int> local(attrs_.size(), -1);
  std::vector<VertexAttrs> attrs;
  attrs.reserve(vertices.size());
  for (size_t i = 0; i < vertices.size(); ++i) {
    local[vertices[i]] = static_cast<int>(i);
    attrs.push_back(attrs_[vertices[i]]);
  }
  std::vector<Edge> edges;
  for (size_t i = 0; i < vertices.size(); ++i) {
    for (Vertex w : adj_[vertices[i]]) {
      const int j = local[w];
      if (j > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), j);
    }
  }
  return Instance(std::move(attrs), edges);
}

Instance Instance::with_attrs(std::vector<VertexAttrs> attrs) const {
  if (attrs.size() != attrs_.size()) {
    throw InvalidInput("attribute vector size does not match vertex count");
  }
  const auto e = edges();
  return Instance(std::move(attrs), e);
}

std::vector<Vertex> closed_neighborhood(const Instance& inst, Vertex v) {
  auto nb = inst.neighbors(v);
  std::vector<Vertex> out(nb.begin(), nb.end());
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

bool is_feasible(const Instance& inst) {
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    if (inst.demand(v) == 0 || inst.capacity(v) > 0) continue;
    auto nb = inst.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(),
                     [&](Vertex u) { return inst.capacity(u) > 0; })) {
      return false;
    }
  }
  return true;
}

std::vector<std::vector<Vertex>> connected_components(const Instance& inst) {
  const int n = inst.num_vertices();
  std::vector<int> seen(n, 0);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (size_t head = 0; head < comp.size(); ++head) {
      for (Vertex w : inst.neighbors(comp[head])) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

void normalize(Assignment& assignment) {
  std::sort(assignment.begin(), assignment.end(), [](const Triple& a, const Triple& b) {
    return std::tie(a.consumer, a.server) < std::tie(b.consumer, b.server);
  });
  Assignment merged;
  merged.reserve(assignment.size());
  for (const Triple& t : assignment) {
    if (!merged.empty() && merged.back().consumer == t.consumer &&
        merged.back().server == t.server) {
      merged.back().amount += t.amount;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Triple& t) { return t.amount == 0; });
  assignment = std::move(merged);
}

std::string_view to_string(DemandModel model) {
  return model == DemandModel::Splittable ? "split" : "unsplit";
}

int64_t solution_cost(const Instance& inst, std::span<const int64_t> multiplicity) {
  int64_t cost = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(multiplicity.size()); ++v) {
    cost += inst.weight(v) * multiplicity[v];
  }
  return cost;
}

}  // namespace capdom

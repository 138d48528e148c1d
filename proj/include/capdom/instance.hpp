#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace capdom {

// Vertices are dense 0-based indices in memory. All file formats and
// user-facing messages use 1-based ids.
using Vertex = int;

struct VertexAttrs {
  int64_t weight = 0;
  int64_t capacity = 0;
  int64_t demand = 0;

  friend bool operator==(const VertexAttrs&, const VertexAttrs&) = default;
};

using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph with per-vertex (weight, capacity, demand).
//
// Construction validates the graph (no self-loops, no parallel edges, ids in
// range, nonnegative attributes) and audits magnitudes so that every sum the
// solvers form fits in int64_t. Throws InvalidInput or OverflowError.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<VertexAttrs> attrs, std::span<const Edge> edges);

  int num_vertices() const noexcept { return static_cast<int>(attrs_.size()); }
  int64_t num_edges() const noexcept { return num_edges_; }

  const VertexAttrs& attrs(Vertex v) const { return attrs_[v]; }
  int64_t weight(Vertex v) const { return attrs_[v].weight; }
  int64_t capacity(Vertex v) const { return attrs_[v].capacity; }
  int64_t demand(Vertex v) const { return attrs_[v].demand; }
  std::span<const VertexAttrs> all_attrs() const { return attrs_; }

  // Sorted open neighborhood.
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  bool adjacent(Vertex u, Vertex v) const;
  // u == v or adjacent(u, v).
  bool in_closed_neighborhood(Vertex center, Vertex u) const;

  // Edges with smaller endpoint first, sorted lexicographically.
  std::vector<Edge> edges() const;

  int64_t total_demand() const;

  // Subgraph induced by `vertices` (in the given order); local vertex i is
  // vertices[i].
  Instance induced(std::span<const Vertex> vertices) const;
  // Same graph, replaced attributes.
  Instance with_attrs(std::vector<VertexAttrs> attrs) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<VertexAttrs> attrs_;
  std::vector<std::vector<Vertex>> adj_;
  int64_t num_edges_ = 0;
};

// N[v] = N(v) ∪ {v}, sorted.
std::vector<Vertex> closed_neighborhood(const Instance& inst, Vertex v);

// True iff every vertex with positive demand has a positive-capacity vertex
// in its closed neighborhood. Soft capacities make this sufficient.
bool is_feasible(const Instance& inst);

// Connected components, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> connected_components(const Instance& inst);

struct Triple {
  Vertex consumer = 0;
  Vertex server = 0;
  int64_t amount = 0;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

using Assignment = std::vector<Triple>;

// Sorts by (consumer, server), merges duplicate pairs, drops zero amounts.
void normalize(Assignment& assignment);

enum class DemandModel { Splittable, Unsplittable };

std::string_view to_string(DemandModel model);

struct Solution {
  std::vector<int64_t> multiplicity;  // x_D(u), indexed by vertex
  Assignment assignment;
  int64_t cost = 0;

  friend bool operator==(const Solution&, const Solution&) = default;
};

// Σ w(u)·x(u).
int64_t solution_cost(const Instance& inst, std::span<const int64_t> multiplicity);

}  // namespace capdom

#include "capdom/generators.hpp"

#include <algorithm>
#include <vector>

namespace capdom {
namespace rng {

int64_t uniform(std::mt19937_64& gen, int64_t lo, int64_t hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<int64_t>(gen());
  const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  uint64_t draw = gen();
  while (draw >= limit) draw = gen();
  return lo + static_cast<int64_t>(draw % span);
}

bool bernoulli(std::mt19937_64& gen, double p) {
  const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return u < p;
}

}  // namespace rng

namespace {

VertexAttrs draw_attrs(std::mt19937_64& gen, const AttrRange& range, double zero_prob) {
  VertexAttrs a;
  a.weight = rng::uniform(gen, 1, range.max_weight);
  a.capacity = rng::uniform(gen, 1, range.max_capacity);
  a.demand = rng::uniform(gen, 1, range.max_demand);
  if (zero_prob > 0.0) {
    if (rng::bernoulli(gen, zero_prob)) a.capacity = 0;
    if (rng::bernoulli(gen, zero_prob)) a.demand = 0;
  }
  return a;
}

// Raise c(v) to 1 wherever v would otherwise be unservable.
Instance repair_feasibility(std::vector<VertexAttrs> attrs, const std::vector<Edge>& edges) {
  Instance probe(attrs, edges);
  for (Vertex v = 0; v < probe.num_vertices(); ++v) {
    if (attrs[v].demand == 0 || attrs[v].capacity > 0) continue;
    auto nb = probe.neighbors(v);
    const bool served = std::any_of(nb.begin(), nb.end(),
                                    [&](Vertex u) { return attrs[u].capacity > 0; });
    if (!served) attrs[v].capacity = 1;
  }
  return Instance(std::move(attrs), edges);
}

void add_chords(int lo, int hi, double chord_prob, std::mt19937_64& gen,
                std::vector<Edge>& edges) {
  // Polygon lo..hi (consecutive on the outer cycle, hi-lo >= 2 means a chord
  // lo-hi is possible). Pick an apex and recurse on both sides.
  if (hi - lo < 2) return;
  const int apex = static_cast<int>(rng::uniform(gen, lo + 1, hi - 1));
  if (apex - lo >= 2 && rng::bernoulli(gen, chord_prob)) edges.emplace_back(lo, apex);
  if (hi - apex >= 2 && rng::bernoulli(gen, chord_prob)) edges.emplace_back(apex, hi);
  add_chords(lo, apex, chord_prob, gen, edges);
  add_chords(apex, hi, chord_prob, gen, edges);
}

}  // namespace

Instance random_instance(const RandomInstanceParams& params) {
  std::mt19937_64 gen(params.seed);
  const AttrRange range{params.max_weight, params.max_capacity, params.max_demand};
  std::vector<VertexAttrs> attrs;
  attrs.reserve(static_cast<size_t>(params.n));
  for (int v = 0; v < params.n; ++v) attrs.push_back(draw_attrs(gen, range, params.zero_prob));
  std::vector<Edge> edges;
  for (int u = 0; u < params.n; ++u) {
    for (int v = u + 1; v < params.n; ++v) {
      if (rng::bernoulli(gen, params.edge_prob)) edges.emplace_back(u, v);
    }
  }
  return repair_feasibility(std::move(attrs), edges);
}

Instance grid_instance(int rows, int cols, const AttrRange& range, uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<VertexAttrs> attrs;
  for (int i = 0; i < rows * cols; ++i) attrs.push_back(draw_attrs(gen, range, 0.0));
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  }
  return repair_feasibility(std::move(attrs), edges);
}

Instance outerplanar_instance(int n, double chord_prob, const AttrRange& range, uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<VertexAttrs> attrs;
  for (int i = 0; i < n; ++i) attrs.push_back(draw_attrs(gen, range, 0.0));
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  if (n >= 3) {
    edges.emplace_back(0, n - 1);
    add_chords(0, n - 1, chord_prob, gen, edges);
  }
  return repair_feasibility(std::move(attrs), edges);
}

}  // namespace capdom

#include "support.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace capdom::testing {

Instance make_instance(std::vector<VertexAttrs> attrs, std::vector<Edge> edges) {
  return Instance(std::move(attrs), edges);
}

Instance p3() { return make_instance({{1, 1, 1}, {3, 10, 1}, {1, 1, 1}}, {{0, 1}, {1, 2}}); }

std::optional<int64_t> brute_unsplittable(const Instance& inst) {
  const int n = inst.num_vertices();
  std::vector<Vertex> consumers;
  for (Vertex v = 0; v < n; ++v) {
    if (inst.demand(v) > 0) consumers.push_back(v);
  }
  std::vector<int64_t> load(n, 0);
  std::optional<int64_t> best;
  std::function<void(size_t)> go = [&](size_t i) {
    if (i == consumers.size()) {
      int64_t cost = 0;
      for (Vertex u = 0; u < n; ++u) {
        if (load[u] > 0) cost += inst.weight(u) * ((load[u] + inst.capacity(u) - 1) / inst.capacity(u));
      }
      if (!best || cost < *best) best = cost;
      return;
    }
    const Vertex v = consumers[i];
    for (Vertex u : closed_neighborhood(inst, v)) {
      if (inst.capacity(u) == 0) continue;
      load[u] += inst.demand(v);
      go(i + 1);
      load[u] -= inst.demand(v);
    }
  };
  go(0);
  return best;
}

bool hall_feasible(const Instance& inst, std::span<const int64_t> x) {
  const int n = inst.num_vertices();
  std::vector<Vertex> consumers;
  for (Vertex v = 0; v < n; ++v) {
    if (inst.demand(v) > 0) consumers.push_back(v);
  }
  const int k = static_cast<int>(consumers.size());
  for (uint32_t mask = 1; mask < (1u << k); ++mask) {
    int64_t need = 0;
    std::vector<char> reach(n, 0);
    for (int i = 0; i < k; ++i) {
      if (!(mask >> i & 1)) continue;
      need += inst.demand(consumers[i]);
      for (Vertex u : closed_neighborhood(inst, consumers[i])) reach[u] = 1;
    }
    int64_t supply = 0;
    for (Vertex u = 0; u < n; ++u) {
      if (reach[u]) supply += inst.capacity(u) * x[u];
    }
    if (supply < need) return false;
  }
  return true;
}

std::optional<int64_t> brute_splittable(const Instance& inst) {
  const int n = inst.num_vertices();
  std::vector<int64_t> cap(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    if (inst.capacity(u) == 0) continue;
    int64_t reach = 0;
    for (Vertex v : closed_neighborhood(inst, u)) reach += inst.demand(v);
    cap[u] = (reach + inst.capacity(u) - 1) / inst.capacity(u);
  }
  std::vector<int64_t> x(n, 0);
  std::optional<int64_t> best;
  std::function<void(int, int64_t)> go = [&](int u, int64_t cost) {
    if (best && cost >= *best) return;
    if (u == n) {
      if (hall_feasible(inst, x)) best = cost;
      return;
    }
    for (int64_t k = 0; k <= cap[u]; ++k) {
      x[u] = k;
      go(u + 1, cost + inst.weight(u) * k);
    }
    x[u] = 0;
  };
  go(0, 0);
  return best;
}

bool brute_assignment_exists(const Instance& inst, std::span<const int64_t> x) {
  const int n = inst.num_vertices();
  std::vector<int64_t> room(n);
  for (Vertex u = 0; u < n; ++u) room[u] = inst.capacity(u) * x[u];
  // Distribute consumer v's remaining demand over its servers one by one.
  std::function<bool(Vertex, size_t, int64_t)> go = [&](Vertex v, size_t s, int64_t left) -> bool {
    if (v == n) return true;
    const auto servers = closed_neighborhood(inst, v);
    if (left == 0) return go(v + 1, 0, v + 1 < n ? inst.demand(v + 1) : 0);
    if (s == servers.size()) return false;
    const Vertex u = servers[s];
    for (int64_t amount = std::min(left, room[u]); amount >= 0; --amount) {
      room[u] -= amount;
      const bool ok = go(v, s + 1, left - amount);
      room[u] += amount;
      if (ok) return true;
    }
    return false;
  };
  return n == 0 || go(0, 0, inst.demand(0));
}

Fraction harmonic_fraction(int n) {
  int64_t num = 0;
  int64_t den = 1;
  for (int i = 1; i <= n; ++i) {
    num = num * i + den;
    den *= i;
    const int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
  return {num, den};
}

bool within_harmonic_bound(int64_t cost, int64_t opt, int n, int64_t a, int64_t b) {
  const Fraction h = harmonic_fraction(n);
  return static_cast<__int128>(cost) * h.den <= static_cast<__int128>(opt) * (a * h.num + b * h.den);
}

}  // namespace capdom::testing

#include "capdom/hardness.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "capdom/errors.hpp"
#include "capdom/verify.hpp"
#include "text_format.hpp"

namespace capdom {
namespace {

int64_t pairs(int k) { return static_cast<int64_t>(k) * (k - 1) / 2; }

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  std::vector<int> parent;
};

int64_t closed_demand(const Instance& inst, Vertex v) {
  int64_t sum = 0;
  for (Vertex u : closed_neighborhood(inst, v)) sum += inst.demand(u);
  return sum;
}

}  // namespace

std::vector<int> CliqueInstance::colors() const {
  if (k < 1) throw InvalidCliqueInstance("k must be at least 1");
  if (static_cast<int>(parts.size()) != k) throw InvalidCliqueInstance("expected k color classes");
  std::vector<int> color(num_vertices, -1);
  for (int i = 0; i < k; ++i) {
    if (parts[i].empty()) throw InvalidCliqueInstance("color class " + std::to_string(i + 1) + " is empty");
    for (int v : parts[i]) {
      if (v < 0 || v >= num_vertices) throw InvalidCliqueInstance("vertex out of range");
      if (color[v] >= 0) throw InvalidCliqueInstance("vertex " + std::to_string(v + 1) + " in two classes");
      color[v] = i;
    }
  }
  for (int v = 0; v < num_vertices; ++v) {
    if (color[v] < 0) throw InvalidCliqueInstance("vertex " + std::to_string(v + 1) + " has no color");
  }
  return color;
}

void CliqueInstance::validate() const {
  const auto color = colors();
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices || u == v) {
      throw InvalidCliqueInstance("bad edge endpoints");
    }
    if (color[u] == color[v]) throw InvalidCliqueInstance("edge inside a color class");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) throw InvalidCliqueInstance("duplicate edge");
  }
}

CliqueInstance load_clique(std::istream& in) {
  text::LineReader reader(in);
  std::vector<std::string_view> tok;
  CliqueInstance cq;
  bool have_header = false;
  int64_t m = 0;
  std::vector<char> part_seen;
  while (reader.next(tok)) {
    if (tok[0] == "p") {
      if (have_header) reader.fail("duplicate header");
      reader.expect_arity(tok, 5);
      if (tok[1] != "mcq") reader.fail("expected 'p mcq'");
      cq.k = static_cast<int>(reader.integer(tok[2], 1, 1000));
      cq.num_vertices = static_cast<int>(reader.integer(tok[3], 1, 100000));
      m = reader.integer(tok[4], 0);
      cq.parts.assign(cq.k, {});
      part_seen.assign(cq.k, 0);
      have_header = true;
    } else if (!have_header) {
      reader.fail("content before 'p mcq' header");
    } else if (tok[0] == "part") {
      if (tok.size() < 2) reader.fail("part line needs an index");
      const auto i = reader.integer(tok[1], 1, cq.k) - 1;
      if (part_seen[i]) reader.fail("duplicate part " + std::string(tok[1]));
      part_seen[i] = 1;
      for (size_t t = 2; t < tok.size(); ++t) {
        cq.parts[i].push_back(static_cast<int>(reader.integer(tok[t], 1, cq.num_vertices) - 1));
      }
      std::sort(cq.parts[i].begin(), cq.parts[i].end());
    } else if (tok[0] == "e") {
      reader.expect_arity(tok, 3);
      auto u = static_cast<int>(reader.integer(tok[1], 1, cq.num_vertices) - 1);
      auto v = static_cast<int>(reader.integer(tok[2], 1, cq.num_vertices) - 1);
      if (u > v) std::swap(u, v);
      cq.edges.emplace_back(u, v);
    } else {
      reader.fail("unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(reader.line(), "missing 'p mcq' header");
  if (static_cast<int64_t>(cq.edges.size()) != m) throw ParseError(reader.line(), "edge count mismatch");
  std::sort(cq.edges.begin(), cq.edges.end());
  try {
    cq.validate();
  } catch (const InvalidCliqueInstance& e) {
    throw ParseError(reader.line(), e.what());
  }
  return cq;
}

CliqueInstance parse_clique(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_clique(in);
}

void save_clique(const CliqueInstance& cq, std::ostream& out) {
  out << "p mcq " << cq.k << ' ' << cq.num_vertices << ' ' << cq.edges.size() << '\n';
  for (int i = 0; i < cq.k; ++i) {
    out << "part " << i + 1;
    for (int v : cq.parts[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [u, v] : cq.edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

std::string to_string(const Role& r) {
  auto n = [](int x) { return std::to_string(x + 1); };
  switch (r.kind) {
    case RoleKind::Selector:
      return "x " + n(r.i);
    case RoleKind::VertexNode:
      return "vertex " + n(r.vertex);
    case RoleKind::PairSelector:
      return "y " + n(r.i) + " " + n(r.j);
    case RoleKind::EdgeNode:
      return "edge " + n(r.edge);
    case RoleKind::Bridge:
      return "bridge " + std::to_string(r.alpha) + " " + n(r.i) + " " + n(r.j);
    case RoleKind::VertexProp:
      return "pv " + std::to_string(r.alpha) + " " + n(r.vertex) + " " + n(r.i) + " " + n(r.j);
    case RoleKind::EdgeProp:
      return "pe " + std::to_string(r.alpha) + " " + n(r.edge) + " " + n(r.i) + " " + n(r.j);
  }
  return "?";
}

int64_t gadget_budget(int k) { return 2 * static_cast<int64_t>(k) * (k - 1) + static_cast<int64_t>(k) * (k + 1) / 2; }

int64_t gadget_node_count(int k, int num_vertices, int64_t num_edges) {
  const int64_t kk = k;
  const int64_t nn = num_vertices;
  return kk + nn + pairs(k) + num_edges + 2 * kk * (kk - 1) + 2 * nn * (kk - 1) + 4 * num_edges;
}

GadgetInstance reduce(const CliqueInstance& cq) {
  cq.validate();
  const auto color = cq.colors();
  const int k = cq.k;
  const int64_t N = cq.num_vertices;
  const int64_t heavy = gadget_budget(k) + 1;

  GadgetInstance g;
  g.k = k;
  g.num_vertices = cq.num_vertices;
  g.budget = gadget_budget(k);
  std::vector<VertexAttrs> attrs;
  std::vector<Edge> edges;
  auto add = [&](Role role, int64_t w, int64_t c, int64_t d) {
    g.roles.push_back(role);
    attrs.push_back({w, c, d});
    return static_cast<Vertex>(attrs.size() - 1);
  };

  std::vector<Vertex> selector(k);
  for (int i = 0; i < k; ++i) selector[i] = add({RoleKind::Selector, i}, heavy, 0, 1);
  std::vector<Vertex> vertex_node(N);
  for (int v = 0; v < N; ++v) {
    vertex_node[v] = add({.kind = RoleKind::VertexNode, .i = color[v], .vertex = v}, 1, 1 + (k - 1) * N, 0);
    edges.emplace_back(selector[color[v]], vertex_node[v]);
  }
  std::map<std::pair<int, int>, Vertex> pair_selector;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) pair_selector[{i, j}] = add({RoleKind::PairSelector, i, j}, heavy, 0, 1);
  }
  // Each edge oriented so that `low` has the smaller color.
  struct Oriented {
    int low, high, ci, cj;
  };
  std::vector<Oriented> oriented;
  std::vector<Vertex> edge_node;
  for (int e = 0; e < static_cast<int>(cq.edges.size()); ++e) {
    auto [u, v] = cq.edges[e];
    if (color[u] > color[v]) std::swap(u, v);
    oriented.push_back({u, v, color[u], color[v]});
    edge_node.push_back(add({.kind = RoleKind::EdgeNode, .i = color[u], .j = color[v], .edge = e}, 1, 1 + 2 * N, 0));
    edges.emplace_back(pair_selector[{color[u], color[v]}], edge_node.back());
  }
  std::map<std::tuple<int, int, int>, Vertex> bridge;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      for (int alpha = 1; alpha <= 2; ++alpha) {
        bridge[{alpha, i, j}] = add({.kind = RoleKind::Bridge, .i = i, .j = j, .alpha = alpha}, 1, 0, 1);
      }
    }
  }
  for (int v = 0; v < N; ++v) {
    const int i = color[v];
    const int64_t label = v + 1;
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      for (int alpha = 1; alpha <= 2; ++alpha) {
        const Vertex p = add({RoleKind::VertexProp, i, j, alpha, v}, heavy, 0, alpha == 1 ? label : N - label);
        edges.emplace_back(vertex_node[v], p);
        edges.emplace_back(bridge[{alpha, i, j}], p);
      }
    }
  }
  for (int e = 0; e < static_cast<int>(oriented.size()); ++e) {
    const auto& o = oriented[e];
    const int64_t lu = o.low + 1;
    const int64_t lv = o.high + 1;
    const std::tuple<int, int, int64_t> specs[] = {
        {o.ci, o.cj, N - lu}, {o.ci, o.cj, lu}, {o.cj, o.ci, N - lv}, {o.cj, o.ci, lv}};
    for (int s = 0; s < 4; ++s) {
      const auto [i, j, d] = specs[s];
      const int alpha = s % 2 + 1;
      const Vertex p = add({RoleKind::EdgeProp, i, j, alpha, -1, e}, heavy, 0, d);
      edges.emplace_back(edge_node[e], p);
      edges.emplace_back(bridge[{alpha, i, j}], p);
    }
  }

  // Bridge capacities need the finished neighbourhoods.
  Instance draft(attrs, edges);
  for (const auto& [key, b] : bridge) {
    attrs[b].capacity = std::max<int64_t>(0, closed_demand(draft, b) - N);
  }
  g.instance = Instance(std::move(attrs), edges);
  return g;
}

void save_roles(const GadgetInstance& g, std::ostream& out) {
  for (size_t v = 0; v < g.roles.size(); ++v) out << "role " << v + 1 << ' ' << to_string(g.roles[v]) << '\n';
}

StructureReport verify_structure(const GadgetInstance& g) {
  StructureReport report;
  const Instance& inst = g.instance;
  const int n = inst.num_vertices();
  const int64_t N = g.num_vertices;
  const int64_t heavy = gadget_budget(g.k) + 1;
  if (static_cast<int>(g.roles.size()) != n) {
    report.failures.push_back("role map size differs from node count");
    return report;
  }
  int64_t edge_nodes = 0;
  for (const Role& r : g.roles) edge_nodes += r.kind == RoleKind::EdgeNode;
  if (n != gadget_node_count(g.k, g.num_vertices, edge_nodes)) {
    report.failures.push_back("node count differs from the closed form");
  }
  if (g.budget != gadget_budget(g.k)) report.failures.push_back("budget differs from k*");

  UnionFind forest(n);
  for (auto [u, v] : inst.edges()) {
    if (g.roles[u].kind == RoleKind::Bridge || g.roles[v].kind == RoleKind::Bridge) continue;
    const int a = forest.find(u);
    const int b = forest.find(v);
    if (a == b) {
      report.failures.push_back("forest: cycle through nodes " + std::to_string(u + 1) + " and " +
                                std::to_string(v + 1) + " after deleting bridges");
      break;
    }
    forest.parent[a] = b;
  }

  for (Vertex v = 0; v < n; ++v) {
    const Role& r = g.roles[v];
    const VertexAttrs& a = inst.attrs(v);
    const std::string where = "capacity-schedule: node " + std::to_string(v + 1) + " (" + to_string(r) + ")";
    switch (r.kind) {
      case RoleKind::Selector:
      case RoleKind::PairSelector:
        if (a != VertexAttrs{heavy, 0, 1}) report.failures.push_back(where);
        break;
      case RoleKind::VertexNode:
        if (a != VertexAttrs{1, 1 + (g.k - 1) * N, 0} || a.capacity != closed_demand(inst, v)) {
          report.failures.push_back(where);
        }
        break;
      case RoleKind::EdgeNode:
        if (a != VertexAttrs{1, 1 + 2 * N, 0} || a.capacity != closed_demand(inst, v)) {
          report.failures.push_back(where);
        }
        break;
      case RoleKind::Bridge:
        if (a.weight != 1 || a.demand != 1 || a.capacity != std::max<int64_t>(0, closed_demand(inst, v) - N)) {
          report.failures.push_back(where);
        }
        break;
      case RoleKind::VertexProp:
      case RoleKind::EdgeProp:
        if (a.weight != heavy || a.capacity != 0 || a.demand > N) report.failures.push_back(where);
        break;
    }
  }
  return report;
}

std::optional<std::vector<int>> find_multicolor_clique(const CliqueInstance& cq) {
  cq.validate();
  std::set<Edge> edge_set(cq.edges.begin(), cq.edges.end());
  auto adjacent = [&](int u, int v) { return edge_set.count({std::min(u, v), std::max(u, v)}) > 0; };
  std::vector<int> pick;
  // Depth-first over color classes, extending only with vertices adjacent to
  // every earlier pick.
  std::vector<size_t> cursor(cq.k, 0);
  int depth = 0;
  while (depth >= 0) {
    if (depth == cq.k) return pick;
    if (cursor[depth] == cq.parts[depth].size()) {
      cursor[depth] = 0;
      --depth;
      if (depth >= 0) pick.pop_back();
      continue;
    }
    const int v = cq.parts[depth][cursor[depth]++];
    if (std::all_of(pick.begin(), pick.end(), [&](int u) { return adjacent(u, v); })) {
      pick.push_back(v);
      ++depth;
    }
  }
  return std::nullopt;
}

Solution forward_witness(const CliqueInstance& cq, const GadgetInstance& g, const std::vector<int>& clique) {
  const Instance& inst = g.instance;
  const int n = inst.num_vertices();
  std::vector<char> in_clique(cq.num_vertices, 0);
  for (int v : clique) in_clique[v] = 1;
  std::vector<char> clique_edge(cq.edges.size(), 0);
  for (size_t e = 0; e < cq.edges.size(); ++e) {
    clique_edge[e] = in_clique[cq.edges[e].first] && in_clique[cq.edges[e].second];
  }
  std::vector<Vertex> vertex_node(cq.num_vertices, -1);
  std::vector<Vertex> edge_node(cq.edges.size(), -1);
  std::map<std::tuple<int, int, int>, Vertex> bridge;
  for (Vertex v = 0; v < n; ++v) {
    const Role& r = g.roles[v];
    if (r.kind == RoleKind::VertexNode) vertex_node[r.vertex] = v;
    if (r.kind == RoleKind::EdgeNode) edge_node[r.edge] = v;
    if (r.kind == RoleKind::Bridge) bridge[{r.alpha, r.i, r.j}] = v;
  }
  Solution sol;
  sol.multiplicity.assign(n, 0);
  for (int v : clique) sol.multiplicity[vertex_node[v]] = 1;
  for (size_t e = 0; e < cq.edges.size(); ++e) {
    if (clique_edge[e]) sol.multiplicity[edge_node[e]] = 1;
  }
  for (const auto& [key, b] : bridge) sol.multiplicity[b] = 1;

  for (Vertex v = 0; v < n; ++v) {
    const Role& r = g.roles[v];
    Vertex server = -1;
    switch (r.kind) {
      case RoleKind::Selector:
        server = vertex_node[clique[r.i]];
        break;
      case RoleKind::PairSelector:
        for (size_t e = 0; e < cq.edges.size(); ++e) {
          if (clique_edge[e] && g.roles[edge_node[e]].i == r.i && g.roles[edge_node[e]].j == r.j) {
            server = edge_node[e];
          }
        }
        break;
      case RoleKind::Bridge:
        server = v;
        break;
      case RoleKind::VertexProp:
        server = in_clique[r.vertex] ? vertex_node[r.vertex] : bridge[{r.alpha, r.i, r.j}];
        break;
      case RoleKind::EdgeProp:
        server = clique_edge[r.edge] ? edge_node[r.edge] : bridge[{r.alpha, r.i, r.j}];
        break;
      default:
        break;
    }
    if (inst.demand(v) > 0) sol.assignment.push_back({v, server, inst.demand(v)});
  }
  normalize(sol.assignment);
  sol.cost = solution_cost(inst, sol.multiplicity);
  return sol;
}

SemanticsReport verify_semantics(const CliqueInstance& cq, const GadgetInstance& g, const SearchBudget& budget,
                                 DemandModel model) {
  SemanticsReport report;
  report.clique_exists = find_multicolor_clique(cq).has_value();
  SearchBudget bounded = budget;
  bounded.upper_bound = g.budget;
  if (!is_feasible(g.instance)) {
    report.within_budget = false;
  } else {
    const OracleResult res = exact_solve(g.instance, model, bounded);
    report.search_nodes = res.nodes;
    if (res.status == SearchStatus::BudgetExhausted) return report;
    report.within_budget = res.status == SearchStatus::Optimal;
    if (res.solution) report.optimum_found = res.solution->cost;
  }
  report.verdict = report.clique_exists == report.within_budget ? Verdict::Pass : Verdict::Fail;
  return report;
}

}  // namespace capdom

#include "capdom/treewidth.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include "capdom/errors.hpp"
#include "text_format.hpp"

namespace capdom {
namespace {

std::string id(int v) { return std::to_string(v + 1); }

bool contains(const std::vector<Vertex>& sorted_bag, Vertex v) {
  return std::binary_search(sorted_bag.begin(), sorted_bag.end(), v);
}

struct DisjointSets {
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<int> parent;
};

// Empty string when `edges` form a spanning tree over `num_bags` nodes.
std::string tree_problem(int num_bags, const std::vector<std::pair<int, int>>& edges) {
  if (num_bags == 0) return edges.empty() ? "" : "tree edges without bags";
  if (static_cast<int>(edges.size()) != num_bags - 1) {
    return "not a tree: " + std::to_string(num_bags) + " bags but " +
           std::to_string(edges.size()) + " tree edges";
  }
  DisjointSets sets(num_bags);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= num_bags || b < 0 || b >= num_bags) return "tree edge references unknown bag";
    if (!sets.unite(a, b)) return "not a tree: cycle through bags " + id(a) + " and " + id(b);
  }
  return "";
}

// Bags holding v must induce a connected subgraph of the bag graph.
bool bags_connected_for(Vertex v, const std::vector<std::vector<Vertex>>& bags,
                        const std::vector<std::vector<int>>& tree_adj) {
  int start = -1;
  int holding = 0;
  for (int b = 0; b < static_cast<int>(bags.size()); ++b) {
    if (contains(bags[b], v)) {
      ++holding;
      if (start < 0) start = b;
    }
  }
  if (holding <= 1) return true;
  std::vector<char> seen(bags.size(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int reached = 0;
  while (!stack.empty()) {
    const int b = stack.back();
    stack.pop_back();
    ++reached;
    for (int nb : tree_adj[b]) {
      if (!seen[nb] && contains(bags[nb], v)) {
        seen[nb] = 1;
        stack.push_back(nb);
      }
    }
  }
  return reached == holding;
}

std::vector<std::vector<int>> adjacency(int num_bags, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(num_bags);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= num_bags || b < 0 || b >= num_bags) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

// Greedy elimination; returns bags indexed by elimination step and the
// tree edges between them.
TreeDecomposition eliminate(const Instance& inst, EliminationHeuristic heuristic) {
  const int n = inst.num_vertices();
  std::vector<std::set<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) {
    auto nb = inst.neighbors(v);
    adj[v].insert(nb.begin(), nb.end());
  }
  std::vector<char> gone(n, 0);
  std::vector<int> position(n, -1);
  std::vector<Vertex> order;
  TreeDecomposition td;

  auto fill_in = [&](Vertex v) {
    int64_t missing = 0;
    for (auto a = adj[v].begin(); a != adj[v].end(); ++a) {
      for (auto b = std::next(a); b != adj[v].end(); ++b) {
        if (!adj[*a].count(*b)) ++missing;
      }
    }
    return missing;
  };

  for (int step = 0; step < n; ++step) {
    Vertex pick = -1;
    int64_t pick_score = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (gone[v]) continue;
      const int64_t score = heuristic == EliminationHeuristic::MinFill
                                ? fill_in(v)
                                : static_cast<int64_t>(adj[v].size());
      if (pick < 0 || score < pick_score) {
        pick = v;
        pick_score = score;
      }
    }
    std::vector<Vertex> bag(adj[pick].begin(), adj[pick].end());
    bag.push_back(pick);
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(bag);
    for (Vertex a : adj[pick]) {
      for (Vertex b : adj[pick]) {
        if (a != b) adj[a].insert(b);
      }
      adj[a].erase(pick);
    }
    adj[pick].clear();
    gone[pick] = 1;
    position[pick] = step;
    order.push_back(pick);
  }

  // Bag of step i hangs below the bag of its earliest-eliminated later
  // neighbor; component roots are chained together.
  int previous_root = -1;
  for (int step = 0; step < n; ++step) {
    const Vertex v = order[step];
    int parent = -1;
    for (Vertex u : td.bags[step]) {
      if (u != v && (parent < 0 || position[u] < parent)) parent = position[u];
    }
    if (parent >= 0) {
      td.tree_edges.emplace_back(step, parent);
    } else {
      if (previous_root >= 0) td.tree_edges.emplace_back(previous_root, step);
      previous_root = step;
    }
  }
  return td;
}

// Merge every bag that is a subset of an adjacent bag into that neighbor.
TreeDecomposition contract_subsets(const TreeDecomposition& td) {
  const int nb = static_cast<int>(td.bags.size());
  std::vector<std::set<int>> adj(nb);
  for (auto [a, b] : td.tree_edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<char> alive(nb, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < nb; ++i) {
      if (!alive[i]) continue;
      for (int j : adj[i]) {
        if (!std::includes(td.bags[j].begin(), td.bags[j].end(), td.bags[i].begin(),
                           td.bags[i].end())) {
          continue;
        }
        for (int k : adj[i]) {
          if (k == j) continue;
          adj[k].erase(i);
          adj[k].insert(j);
          adj[j].insert(k);
        }
        adj[j].erase(i);
        adj[i].clear();
        alive[i] = 0;
        changed = true;
        break;
      }
    }
  }
  std::vector<int> remap(nb, -1);
  TreeDecomposition out;
  for (int i = 0; i < nb; ++i) {
    if (!alive[i]) continue;
    remap[i] = static_cast<int>(out.bags.size());
    out.bags.push_back(td.bags[i]);
  }
  for (int i = 0; i < nb; ++i) {
    if (!alive[i]) continue;
    for (int j : adj[i]) {
      if (i < j) out.tree_edges.emplace_back(remap[i], remap[j]);
    }
  }
  std::sort(out.tree_edges.begin(), out.tree_edges.end());
  return out;
}

}  // namespace

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
  return w;
}

TdReport validate_td(const Instance& inst, const TreeDecomposition& td) {
  TdReport report;
  const int n = inst.num_vertices();
  const int nb = static_cast<int>(td.bags.size());
  for (int b = 0; b < nb; ++b) {
    const auto& bag = td.bags[b];
    if (!std::is_sorted(bag.begin(), bag.end()) ||
        std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
      report.failures.push_back("bag " + id(b) + " is not a sorted set");
      return report;
    }
    for (Vertex v : bag) {
      if (v < 0 || v >= n) {
        report.failures.push_back("bag " + id(b) + " holds an unknown vertex");
        return report;
      }
    }
  }
  if (auto problem = tree_problem(nb, td.tree_edges); !problem.empty()) {
    report.failures.push_back(problem);
  }
  std::vector<char> covered(n, 0);
  for (const auto& bag : td.bags) {
    for (Vertex v : bag) covered[v] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!covered[v]) report.failures.push_back("vertex " + id(v) + " is in no bag");
  }
  for (auto [u, v] : inst.edges()) {
    const bool found = std::any_of(td.bags.begin(), td.bags.end(), [&](const auto& bag) {
      return contains(bag, u) && contains(bag, v);
    });
    if (!found) report.failures.push_back("edge (" + id(u) + "," + id(v) + ") uncovered");
  }
  const auto adj = adjacency(nb, td.tree_edges);
  for (Vertex v = 0; v < n; ++v) {
    if (!bags_connected_for(v, td.bags, adj)) {
      report.failures.push_back("bags of vertex " + id(v) + " are not connected");
    }
  }
  return report;
}

TreeDecomposition heuristic_decomposition(const Instance& inst, EliminationHeuristic heuristic) {
  return contract_subsets(eliminate(inst, heuristic));
}

int NiceTreeDecomposition::width() const {
  int w = -1;
  for (const auto& node : nodes) w = std::max(w, static_cast<int>(node.bag.size()) - 1);
  return w;
}

std::vector<int> NiceTreeDecomposition::post_order() const {
  std::vector<int> order;
  if (root < 0) return order;
  std::vector<std::pair<int, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [node, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      order.push_back(node);
      continue;
    }
    stack.push_back({node, true});
    const auto& children = nodes[node].children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back({*it, false});
  }
  return order;
}

TreeDecomposition NiceTreeDecomposition::project() const {
  TreeDecomposition td;
  for (const auto& node : nodes) td.bags.push_back(node.bag);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    for (int c : nodes[i].children) td.tree_edges.emplace_back(i, c);
  }
  return td;
}

NiceTreeDecomposition make_nice(const TreeDecomposition& input) {
  const int nb = static_cast<int>(input.bags.size());
  if (auto problem = tree_problem(nb, input.tree_edges); !problem.empty()) {
    throw InvalidInput(problem);
  }
  int max_vertex = -1;
  for (const auto& bag : input.bags) {
    if (!std::is_sorted(bag.begin(), bag.end()) ||
        std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
      throw InvalidInput("bag is not a sorted set");
    }
    if (!bag.empty()) {
      if (bag.front() < 0) throw InvalidInput("negative vertex in bag");
      max_vertex = std::max(max_vertex, bag.back());
    }
  }
  auto adj = adjacency(nb, input.tree_edges);
  for (Vertex v = 0; v <= max_vertex; ++v) {
    if (!bags_connected_for(v, input.bags, adj)) {
      throw InvalidInput("bags of vertex " + id(v) + " are not connected");
    }
  }

  // Prune empty leaf bags; a leaf node needs exactly one vertex.
  std::vector<char> alive(nb, 1);
  std::vector<int> degree(nb);
  for (int b = 0; b < nb; ++b) degree[b] = static_cast<int>(adj[b].size());
  int remaining = nb;
  for (bool changed = true; changed;) {
    changed = false;
    for (int b = 0; b < nb; ++b) {
      if (alive[b] && input.bags[b].empty() && degree[b] <= 1) {
        alive[b] = 0;
        --remaining;
        for (int o : adj[b]) {
          if (alive[o]) --degree[o];
        }
        changed = true;
      }
    }
  }
  NiceTreeDecomposition ntd;
  if (remaining == 0) return ntd;

  int root_bag = -1;
  Vertex lowest = max_vertex + 1;
  for (int b = 0; b < nb; ++b) {
    if (alive[b] && !input.bags[b].empty() && input.bags[b].front() < lowest) {
      lowest = input.bags[b].front();
      root_bag = b;
    }
  }

  std::vector<int> parent(nb, -1);
  std::vector<int> bfs{root_bag};
  std::vector<char> seen(nb, 0);
  seen[root_bag] = 1;
  for (size_t head = 0; head < bfs.size(); ++head) {
    for (int o : adj[bfs[head]]) {
      if (alive[o] && !seen[o]) {
        seen[o] = 1;
        parent[o] = bfs[head];
        bfs.push_back(o);
      }
    }
  }
  std::vector<std::vector<int>> children(nb);
  for (int b : bfs) {
    if (parent[b] >= 0) children[parent[b]].push_back(b);
  }

  auto add = [&](NiceKind kind, std::vector<Vertex> bag, Vertex v, std::vector<int> kids) {
    ntd.nodes.push_back({kind, std::move(bag), v, std::move(kids)});
    return static_cast<int>(ntd.nodes.size()) - 1;
  };
  // Forget what `to` lacks, then introduce what `from` lacks.
  auto bridge = [&](int node, std::vector<Vertex> bag, const std::vector<Vertex>& to) {
    for (Vertex v : std::vector<Vertex>(bag)) {
      if (contains(to, v)) continue;
      bag.erase(std::find(bag.begin(), bag.end(), v));
      node = add(NiceKind::Forget, bag, v, {node});
    }
    for (Vertex v : to) {
      if (contains(bag, v)) continue;
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      node = add(NiceKind::Introduce, bag, v, {node});
    }
    return node;
  };

  std::vector<int> top(nb, -1);
  for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
    const int b = *it;
    const auto& bag = input.bags[b];
    std::vector<int> tops;
    for (int c : children[b]) tops.push_back(bridge(top[c], input.bags[c], bag));
    if (tops.empty()) {
      int node = add(NiceKind::Leaf, {bag.front()}, bag.front(), {});
      top[b] = bridge(node, {bag.front()}, bag);
      continue;
    }
    int node = tops.front();
    for (size_t i = 1; i < tops.size(); ++i) node = add(NiceKind::Join, bag, -1, {node, tops[i]});
    top[b] = node;
  }
  ntd.root = bridge(top[root_bag], input.bags[root_bag], {});
  return ntd;
}

std::string check_nice_structure(const NiceTreeDecomposition& ntd) {
  if (ntd.root < 0) return ntd.nodes.empty() ? "" : "nodes without a root";
  const int count = static_cast<int>(ntd.nodes.size());
  if (!ntd.nodes[ntd.root].bag.empty()) return "root bag is not empty";
  std::vector<int> visits(count, 0);
  std::vector<int> stack{ntd.root};
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (i < 0 || i >= count) return "child index out of range";
    if (++visits[i] > 1) return "node " + std::to_string(i) + " reached twice";
    const NiceNode& node = ntd.nodes[i];
    for (int c : node.children) stack.push_back(c);
    auto child_bag = [&](int k) -> const std::vector<Vertex>& {
      return ntd.nodes[node.children[k]].bag;
    };
    const std::string where = "node " + std::to_string(i);
    switch (node.kind) {
      case NiceKind::Leaf:
        if (!node.children.empty()) return where + ": leaf with children";
        if (node.bag.size() != 1 || node.bag[0] != node.vertex) return where + ": leaf bag must be {v}";
        break;
      case NiceKind::Join:
        if (node.children.size() != 2) return where + ": join needs two children";
        for (int c : node.children) {
          if (c < 0 || c >= count) return "child index out of range";
        }
        if (child_bag(0) != node.bag || child_bag(1) != node.bag) return where + ": join bags differ";
        break;
      case NiceKind::Introduce:
      case NiceKind::Forget: {
        if (node.children.size() != 1) return where + ": needs one child";
        if (node.children[0] < 0 || node.children[0] >= count) return "child index out of range";
        const auto& small = node.kind == NiceKind::Introduce ? child_bag(0) : node.bag;
        const auto& big = node.kind == NiceKind::Introduce ? node.bag : child_bag(0);
        std::vector<Vertex> expect = small;
        if (contains(small, node.vertex)) return where + ": vertex already present";
        expect.insert(std::lower_bound(expect.begin(), expect.end(), node.vertex), node.vertex);
        if (expect != big) return where + ": bags differ by more than one vertex";
        break;
      }
    }
  }
  for (int i = 0; i < count; ++i) {
    if (visits[i] == 0) return "node " + std::to_string(i) + " unreachable from the root";
  }
  return "";
}

TreeDecomposition load_td(std::istream& in) {
  text::LineReader reader(in);
  std::vector<std::string_view> tok;
  TreeDecomposition td;
  bool have_header = false;
  int64_t num_vertices = 0;
  std::vector<char> defined;
  while (reader.next(tok)) {
    if (tok[0] == "s") {
      if (have_header) reader.fail("duplicate header");
      reader.expect_arity(tok, 5);
      if (tok[1] != "td") reader.fail("expected 's td'");
      const auto count = reader.integer(tok[2], 0, 10'000'000);
      reader.integer(tok[3], 0);
      num_vertices = reader.integer(tok[4], 0, std::numeric_limits<int>::max() - 1);
      td.bags.assign(static_cast<size_t>(count), {});
      defined.assign(static_cast<size_t>(count), 0);
      have_header = true;
    } else if (!have_header) {
      reader.fail("content before 's td' header");
    } else if (tok[0] == "b") {
      if (tok.size() < 2) reader.fail("bag line needs an id");
      const auto b = reader.integer(tok[1], 1, static_cast<int64_t>(td.bags.size())) - 1;
      if (defined[b]) reader.fail("duplicate bag " + std::string(tok[1]));
      defined[b] = 1;
      for (size_t i = 2; i < tok.size(); ++i) {
        td.bags[b].push_back(static_cast<Vertex>(reader.integer(tok[i], 1, num_vertices) - 1));
      }
      std::sort(td.bags[b].begin(), td.bags[b].end());
      if (std::adjacent_find(td.bags[b].begin(), td.bags[b].end()) != td.bags[b].end()) {
        reader.fail("repeated vertex in bag " + std::string(tok[1]));
      }
    } else {
      reader.expect_arity(tok, 2);
      const auto limit = static_cast<int64_t>(td.bags.size());
      td.tree_edges.emplace_back(static_cast<int>(reader.integer(tok[0], 1, limit) - 1),
                                 static_cast<int>(reader.integer(tok[1], 1, limit) - 1));
    }
  }
  if (!have_header) throw ParseError(reader.line(), "missing 's td' header");
  for (size_t b = 0; b < defined.size(); ++b) {
    if (!defined[b]) throw ParseError(reader.line(), "bag " + std::to_string(b + 1) + " not defined");
  }
  return td;
}

void save_td(const TreeDecomposition& td, int num_vertices, std::ostream& out) {
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << num_vertices << '\n';
  for (size_t b = 0; b < td.bags.size(); ++b) {
    out << "b " << b + 1;
    for (Vertex v : td.bags[b]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
}

void save_nice(const NiceTreeDecomposition& ntd, std::ostream& out) {
  static constexpr const char* kNames[] = {"leaf", "introduce", "forget", "join"};
  out << "c nice tree decomposition, width " << ntd.width() << '\n';
  out << "s nice " << ntd.nodes.size() << ' ' << ntd.root + 1 << '\n';
  for (size_t i = 0; i < ntd.nodes.size(); ++i) {
    const NiceNode& node = ntd.nodes[i];
    out << "n " << i + 1 << ' ' << kNames[static_cast<int>(node.kind)] << ' ' << node.vertex + 1
        << " bag";
    for (Vertex v : node.bag) out << ' ' << v + 1;
    out << " children";
    for (int c : node.children) out << ' ' << c + 1;
    out << '\n';
  }
}

}  // namespace capdom

#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "capdom/errors.hpp"
#include "capdom/generators.hpp"
#include "capdom/treewidth.hpp"
#include "support.hpp"

using namespace capdom;
using capdom::testing::make_instance;

namespace {

Instance bare(int n, std::vector<Edge> edges) {
  return make_instance(std::vector<VertexAttrs>(n, VertexAttrs{1, 1, 1}), std::move(edges));
}

Instance clique(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return bare(n, edges);
}

Instance cycle(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return bare(n, edges);
}

bool mentions(const TdReport& report, const std::string& text) {
  return std::any_of(report.failures.begin(), report.failures.end(),
                     [&](const std::string& f) { return f.find(text) != std::string::npos; });
}

}  // namespace

TEST_CASE("validate_td examples") {
  const Instance path = bare(3, {{0, 1}, {1, 2}});
  TreeDecomposition good{{{0, 1}, {1, 2}}, {{0, 1}}};
  CHECK(validate_td(path, good).passed());
  CHECK(good.width() == 1);

  TreeDecomposition no_edge{{{0, 1}, {1, 2}}, {}};
  CHECK(mentions(validate_td(path, no_edge), "not a tree"));

  TreeDecomposition split{{{0}, {2}}, {{0, 1}}};
  const TdReport r = validate_td(path, split);
  CHECK(mentions(r, "vertex 2 is in no bag"));
  CHECK(mentions(r, "edge (1,2) uncovered"));

  TreeDecomposition gap{{{0, 1}, {1, 2}, {0}}, {{0, 1}, {1, 2}}};
  CHECK(mentions(validate_td(path, gap), "bags of vertex 1 are not connected"));

  CHECK(TreeDecomposition{}.width() == -1);
}

TEST_CASE("heuristic widths") {
  const Instance tree = bare(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}});
  for (auto h : {EliminationHeuristic::MinFill, EliminationHeuristic::MinDegree}) {
    const TreeDecomposition t = heuristic_decomposition(tree, h);
    CHECK(validate_td(tree, t).passed());
    CHECK(t.width() == 1);
    CHECK(heuristic_decomposition(clique(4), h).width() == 3);
    CHECK(heuristic_decomposition(cycle(5), h).width() == 2);
  }
  const Instance isolated = bare(3, {});
  const TreeDecomposition t = heuristic_decomposition(isolated);
  CHECK(validate_td(isolated, t).passed());
  CHECK(t.width() == 0);
}

TEST_CASE("heuristic decompositions are valid on random graphs") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = random_instance({1 + static_cast<int>(seed % 14), 0.3, 1, 1, 1, 0.0, seed});
    for (auto h : {EliminationHeuristic::MinFill, EliminationHeuristic::MinDegree}) {
      const TreeDecomposition td = heuristic_decomposition(inst, h);
      REQUIRE(validate_td(inst, td).passed());
      const NiceTreeDecomposition ntd = make_nice(td);
      CHECK(check_nice_structure(ntd).empty());
      CHECK(validate_td(inst, ntd.project()).passed());
      CHECK(ntd.width() == td.width());
    }
  }
}

TEST_CASE("nice form of a single bag") {
  const Instance one = bare(1, {});
  const NiceTreeDecomposition ntd = make_nice(TreeDecomposition{{{0}}, {}});
  REQUIRE(ntd.nodes.size() == 2);
  CHECK(ntd.nodes[ntd.root].kind == NiceKind::Forget);
  CHECK(ntd.nodes[ntd.root].bag.empty());
  const NiceNode& leaf = ntd.nodes[ntd.nodes[ntd.root].children.at(0)];
  CHECK(leaf.kind == NiceKind::Leaf);
  CHECK(leaf.bag == std::vector<Vertex>{0});
  CHECK(validate_td(one, ntd.project()).passed());
}

TEST_CASE("nice form uses joins for branching bags") {
  const Instance star = bare(4, {{0, 1}, {0, 2}, {0, 3}});
  const TreeDecomposition td{{{0, 1}, {0, 2}, {0, 3}}, {{0, 1}, {0, 2}}};
  const NiceTreeDecomposition ntd = make_nice(td);
  CHECK(check_nice_structure(ntd).empty());
  int joins = 0;
  for (const NiceNode& node : ntd.nodes) {
    if (node.kind == NiceKind::Join) {
      ++joins;
      CHECK(node.children.size() == 2);
      for (int c : node.children) CHECK(ntd.nodes[c].bag == node.bag);
    }
  }
  CHECK(joins == 1);
  CHECK(ntd.nodes[ntd.root].bag.empty());
  const auto order = ntd.post_order();
  CHECK(order.size() == ntd.nodes.size());
  CHECK(order.back() == ntd.root);
  CHECK(validate_td(star, ntd.project()).passed());
}

TEST_CASE("make_nice rejects invalid input and structure checks catch tampering") {
  CHECK_THROWS_AS(make_nice(TreeDecomposition{{{0, 1}, {1, 2}}, {}}), InvalidInput);
  NiceTreeDecomposition ntd = make_nice(TreeDecomposition{{{0, 1}, {1, 2}}, {{0, 1}}});
  REQUIRE(check_nice_structure(ntd).empty());
  for (NiceNode& node : ntd.nodes) {
    if (node.kind == NiceKind::Introduce) {
      node.vertex = 99;
      break;
    }
  }
  CHECK_FALSE(check_nice_structure(ntd).empty());
}

TEST_CASE("PACE round trip") {
  const TreeDecomposition td = heuristic_decomposition(cycle(6));
  std::ostringstream out;
  save_td(td, 6, out);
  CHECK(out.str().rfind("s td ", 0) == 0);
  std::istringstream in(out.str());
  const TreeDecomposition back = load_td(in);
  CHECK(back.bags == td.bags);
  CHECK(back.tree_edges.size() == td.tree_edges.size());
  CHECK(validate_td(cycle(6), back).passed());

  std::istringstream bad("s td 1 2 2\nb 1 1 3\n");
  CHECK_THROWS_AS(load_td(bad), Error);
}

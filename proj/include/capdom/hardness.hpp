#pragma once

// Reduction from Multicolor Clique to capacitated domination, with
// structural and small-scale semantic checks.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capdom/instance.hpp"
#include "capdom/oracle.hpp"

namespace capdom {

// Vertices 0..N-1 (label(v) = v + 1), colors 0..k-1.
struct CliqueInstance {
  int k = 0;
  int num_vertices = 0;
  std::vector<std::vector<int>> parts;  // parts[i] = V[i], sorted
  std::vector<Edge> edges;              // cross-color pairs, smaller endpoint first

  // Color of each vertex. Throws InvalidCliqueInstance if the invariants fail.
  std::vector<int> colors() const;
  void validate() const;
};

// Format:
//   p mcq <k> <N> <|E|>
//   part <i> <v...>
//   e <u> <v>
CliqueInstance load_clique(std::istream& in);
CliqueInstance parse_clique(std::string_view text);
void save_clique(const CliqueInstance& cq, std::ostream& out);

enum class RoleKind { Selector, VertexNode, PairSelector, EdgeNode, Bridge, VertexProp, EdgeProp };

// Colors i, j are 0-based, alpha is 1 or 2.
//   Selector        x_i
//   VertexNode      vertex-node of `vertex`
//   PairSelector    y_ij (i < j)
//   EdgeNode        edge-node of edges[edge]
//   Bridge          b^alpha_{i,j}
//   VertexProp      p^alpha_{vertex,i,j}
//   EdgeProp        p^alpha_{e,i,j} with e = edges[edge]
struct Role {
  RoleKind kind = RoleKind::Selector;
  int i = -1;
  int j = -1;
  int alpha = 0;
  int vertex = -1;
  int edge = -1;

  friend bool operator==(const Role&, const Role&) = default;
};

std::string to_string(const Role& role);

struct GadgetInstance {
  Instance instance;
  std::vector<Role> roles;  // by node
  int64_t budget = 0;       // k* = 2k(k-1) + k(k+1)/2
  int k = 0;
  int num_vertices = 0;
};

int64_t gadget_budget(int k);
int64_t gadget_node_count(int k, int num_vertices, int64_t num_edges);

GadgetInstance reduce(const CliqueInstance& cq);

// `role <node> <tag>` lines, 1-based nodes.
void save_roles(const GadgetInstance& g, std::ostream& out);

struct StructureReport {
  std::vector<std::string> failures;
  bool passed() const noexcept { return failures.empty(); }
};

// Forest after deleting bridges, attribute schedule per role, closed
// neighbourhood capacities of vertex/edge nodes and bridges.
StructureReport verify_structure(const GadgetInstance& g);

std::optional<std::vector<int>> find_multicolor_clique(const CliqueInstance& cq);

// All bridges, the vertex-nodes of the clique and the edge-nodes of its
// edges, each once, with an explicit unsplittable assignment.
Solution forward_witness(const CliqueInstance& cq, const GadgetInstance& g, const std::vector<int>& clique);

enum class Verdict { Pass, Fail, Inconclusive };

struct SemanticsReport {
  Verdict verdict = Verdict::Inconclusive;
  bool clique_exists = false;
  bool within_budget = false;  // gadget optimum <= k*
  std::optional<int64_t> optimum_found;
  int64_t search_nodes = 0;
};

// Clique existence by exhaustive search against "gadget optimum <= k*" by
// the exact oracle run with upper bound k*.
SemanticsReport verify_semantics(const CliqueInstance& cq, const GadgetInstance& g,
                                 const SearchBudget& budget = {},
                                 DemandModel model = DemandModel::Unsplittable);

}  // namespace capdom

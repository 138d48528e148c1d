#include "capdom/io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "capdom/errors.hpp"
#include "text_format.hpp"

namespace capdom {

Instance load_instance(std::istream& in) {
  text::LineReader reader(in);
  std::vector<std::string_view> tok;
  bool have_header = false;
  int64_t n = 0;
  int64_t m = 0;
  std::vector<VertexAttrs> attrs;
  std::vector<char> defined;
  std::vector<Edge> edges;
  std::set<Edge> seen_edges;

  while (reader.next(tok)) {
    if (tok[0] == "p") {
      if (have_header) reader.fail("duplicate header");
      reader.expect_arity(tok, 4);
      if (tok[1] != "capdom") reader.fail("expected 'p capdom'");
      n = reader.integer(tok[2], 0, std::numeric_limits<int>::max() - 1);
      m = reader.integer(tok[3], 0);
      attrs.assign(static_cast<size_t>(n), VertexAttrs{});
      defined.assign(static_cast<size_t>(n), 0);
      have_header = true;
    } else if (tok[0] == "v") {
      if (!have_header) reader.fail("vertex line before header");
      reader.expect_arity(tok, 5);
      const auto id = reader.integer(tok[1], 1, n);
      if (defined[id - 1]) reader.fail("duplicate vertex " + std::string(tok[1]));
      defined[id - 1] = 1;
      attrs[id - 1] = VertexAttrs{reader.integer(tok[2]), reader.integer(tok[3]),
                                  reader.integer(tok[4])};
    } else if (tok[0] == "e") {
      if (!have_header) reader.fail("edge line before header");
      reader.expect_arity(tok, 3);
      auto u = static_cast<Vertex>(reader.integer(tok[1], 1, n) - 1);
      auto v = static_cast<Vertex>(reader.integer(tok[2], 1, n) - 1);
      if (u == v) reader.fail("self-loop at vertex " + std::string(tok[1]));
      if (u > v) std::swap(u, v);
      if (!seen_edges.insert({u, v}).second) {
        reader.fail("duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
      }
      edges.emplace_back(u, v);
    } else {
      reader.fail("unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(reader.line(), "missing 'p capdom' header");
  for (int64_t v = 0; v < n; ++v) {
    if (!defined[v]) throw ParseError(reader.line(), "vertex " + std::to_string(v + 1) + " not defined");
  }
  if (static_cast<int64_t>(edges.size()) != m) {
    throw ParseError(reader.line(), "header declares " + std::to_string(m) + " edges, found " +
                                        std::to_string(edges.size()));
  }
  return Instance(std::move(attrs), edges);
}

Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_instance(in);
}

void save_instance(const Instance& inst, std::ostream& out) {
  out << "p capdom " << inst.num_vertices() << ' ' << inst.num_edges() << '\n';
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    const VertexAttrs& a = inst.attrs(v);
    out << "v " << v + 1 << ' ' << a.weight << ' ' << a.capacity << ' ' << a.demand << '\n';
  }
  for (auto [u, v] : inst.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

std::string format_instance(const Instance& inst) {
  std::ostringstream out;
  save_instance(inst, out);
  return out.str();
}

SolutionFile load_solution(std::istream& in, int num_vertices) {
  text::LineReader reader(in);
  std::vector<std::string_view> tok;
  SolutionFile file;
  file.solution.multiplicity.assign(static_cast<size_t>(num_vertices), 0);
  std::vector<char> has_x(static_cast<size_t>(num_vertices), 0);
  bool have_header = false;

  while (reader.next(tok)) {
    if (tok[0] == "s") {
      if (have_header) reader.fail("duplicate header");
      reader.expect_arity(tok, 4);
      if (tok[1] != "capdom") reader.fail("expected 's capdom'");
      file.solution.cost = reader.integer(tok[2]);
      if (tok[3] == "split") {
        file.model = DemandModel::Splittable;
      } else if (tok[3] == "unsplit") {
        file.model = DemandModel::Unsplittable;
      } else {
        reader.fail("model must be 'split' or 'unsplit'");
      }
      have_header = true;
    } else if (tok[0] == "x") {
      if (!have_header) reader.fail("multiplicity line before header");
      reader.expect_arity(tok, 3);
      const auto v = reader.integer(tok[1], 1, num_vertices) - 1;
      if (has_x[v]) reader.fail("duplicate multiplicity for vertex " + std::string(tok[1]));
      has_x[v] = 1;
      file.solution.multiplicity[v] = reader.integer(tok[2], 1);
    } else if (tok[0] == "a") {
      if (!have_header) reader.fail("assignment line before header");
      reader.expect_arity(tok, 4);
      Triple t;
      t.consumer = static_cast<Vertex>(reader.integer(tok[1], 1, num_vertices) - 1);
      t.server = static_cast<Vertex>(reader.integer(tok[2], 1, num_vertices) - 1);
      t.amount = reader.integer(tok[3], 1);
      file.solution.assignment.push_back(t);
    } else if (tok[0] == "t") {
      // Trace records are diagnostics; the solution ignores them.
    } else {
      reader.fail("unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(reader.line(), "missing 's capdom' header");
  return file;
}

SolutionFile parse_solution(std::string_view text, int num_vertices) {
  std::istringstream in{std::string(text)};
  return load_solution(in, num_vertices);
}

void save_solution(const Solution& sol, DemandModel model, std::ostream& out) {
  out << "s capdom " << sol.cost << ' ' << to_string(model) << '\n';
  for (size_t v = 0; v < sol.multiplicity.size(); ++v) {
    if (sol.multiplicity[v] != 0) out << "x " << v + 1 << ' ' << sol.multiplicity[v] << '\n';
  }
  Assignment sorted = sol.assignment;
  std::sort(sorted.begin(), sorted.end());
  for (const Triple& t : sorted) {
    if (t.amount == 0) continue;
    out << "a " << t.consumer + 1 << ' ' << t.server + 1 << ' ' << t.amount << '\n';
  }
}

std::string format_solution(const Solution& sol, DemandModel model) {
  std::ostringstream out;
  save_solution(sol, model, out);
  return out.str();
}

}  // namespace capdom

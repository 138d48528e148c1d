#include "capdom/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "capdom/baker.hpp"
#include "capdom/batch.hpp"
#include "capdom/errors.hpp"
#include "capdom/generators.hpp"
#include "capdom/greedy.hpp"
#include "capdom/hardness.hpp"
#include "capdom/io.hpp"
#include "capdom/oracle.hpp"
#include "capdom/td_dp.hpp"
#include "capdom/treewidth.hpp"
#include "capdom/verify.hpp"

namespace capdom::cli {
namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct SolveOptions {
  std::string algo = "greedy-unsplit";
  std::string model;
  int k = 3;
  std::string td_path;
  bool trace = false;
  bool serial = false;
  int64_t budget = SearchBudget{}.max_nodes;
  std::string output;
  std::string instance;
};

struct VerifyOptions {
  std::string model;
  std::string instance;
  std::string solution;
};

struct GenOptions {
  std::string kind;
  int n = 10;
  double edge_prob = 0.3;
  int64_t max_weight = 5;
  int64_t max_capacity = 5;
  int64_t max_demand = 5;
  double zero_prob = 0.0;
  uint64_t seed = 1;
  std::string input;
  std::string output;
  std::string roles;
};

struct TdOptions {
  std::string action;
  std::string heuristic = "min-fill";
  std::string instance;
  std::string td_path;
  std::string output;
};

struct BenchOptions {
  BenchConfig config;
  std::string model = "unsplit";
  bool serial = false;
  std::string output;
};

DemandModel parse_model(const std::string& s) {
  if (s == "split") return DemandModel::Splittable;
  if (s == "unsplit") return DemandModel::Unsplittable;
  throw UsageError("unknown model '" + s + "' (expected split or unsplit)");
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

Instance read_instance(const std::string& path) {
  auto in = open_in(path);
  return load_instance(in);
}

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
}

std::string trace_lines(const GreedyResult& g) {
  std::ostringstream s;
  for (const TraceStep& t : g.trace) {
    s << "t " << t.iteration << ' ' << t.chosen + 1 << ' ' << t.prefix_len << ' ' << t.cost << ' '
      << static_cast<int>(t.phase) << '\n';
  }
  return s.str();
}

int do_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> algos = {"greedy-unsplit", "greedy-split", "greedy-unweighted",
                                                 "dp",             "baker",        "oracle"};
  if (std::find(algos.begin(), algos.end(), o.algo) == algos.end()) {
    throw UsageError("unknown algorithm '" + o.algo + "'");
  }
  DemandModel model = DemandModel::Unsplittable;
  if (o.algo == "greedy-split" || o.algo == "greedy-unweighted") model = DemandModel::Splittable;
  if (!o.model.empty()) {
    const DemandModel asked = parse_model(o.model);
    if (o.algo.rfind("greedy", 0) == 0 && asked != model) {
      throw UsageError(o.algo + " solves the " + std::string(to_string(model)) + " model only");
    }
    model = asked;
  }
  if (o.algo == "baker" && o.k < 2) throw UsageError("--k must be at least 2");
  if (o.trace && o.algo.rfind("greedy", 0) != 0) throw UsageError("--trace needs a greedy algorithm");
  if (!o.td_path.empty() && o.algo != "dp") throw UsageError("--td applies to --algo dp only");

  const Instance inst = read_instance(o.instance);
  if (o.algo == "greedy-unweighted") {
    for (Vertex v = 0; v < inst.num_vertices(); ++v) {
      if (inst.weight(v) != 1) throw UsageError("greedy-unweighted needs unit weights");
    }
  }
  if (!is_feasible(inst)) throw InfeasibleInstance("some vertex with positive demand has no positive-capacity closed neighbor");

  Solution sol;
  std::string extra;
  if (o.algo == "greedy-unsplit" || o.algo == "greedy-split" || o.algo == "greedy-unweighted") {
    GreedyResult g = o.algo == "greedy-unsplit" ? greedy_unsplittable(inst)
                     : o.algo == "greedy-split" ? greedy_splittable(inst)
                                                : greedy_unweighted_splittable(inst);
    if (o.trace) extra = trace_lines(g);
    sol = std::move(g.solution);
  } else if (o.algo == "dp") {
    if (o.td_path.empty()) {
      sol = solve_td(inst, model);
    } else {
      auto in = open_in(o.td_path);
      sol = solve_td(inst, make_nice(load_td(in)), model);
    }
  } else if (o.algo == "baker") {
    const BakerResult b = baker_solve(inst, o.k, model, o.serial ? Execution::Serial : Execution::Parallel);
    std::ostringstream s;
    s << "c levels " << b.num_levels << '\n';
    for (int r = 0; r < o.k; ++r) s << "c shift " << r << ' ' << b.shift_costs[r] << '\n';
    extra = s.str();
    sol = b.solution;
  } else {
    SearchBudget budget;
    budget.max_nodes = o.budget;
    const OracleResult res = exact_solve(inst, model, budget);
    if (!res.proven()) {
      err << "oracle node budget exhausted after " << res.nodes << " nodes\n";
      return kBudgetExhausted;
    }
    sol = *res.solution;
  }

  const VerificationReport report = verify_solution(inst, sol, model);
  if (!report.passed()) {
    err << "internal error: solution failed verification\n" << report.to_string();
    return kVerifyFailed;
  }
  emit(o.output, format_solution(sol, model) + extra, out);
  return kOk;
}

int do_verify(const VerifyOptions& o, std::ostream& out) {
  const Instance inst = read_instance(o.instance);
  auto in = open_in(o.solution);
  const SolutionFile file = load_solution(in, inst.num_vertices());
  const DemandModel model = o.model.empty() ? file.model : parse_model(o.model);
  const VerificationReport report = verify_solution(inst, file.solution, model);
  out << report.to_string();
  return report.passed() ? kOk : kVerifyFailed;
}

int do_gen(const GenOptions& o, std::ostream& out) {
  if (o.kind == "random") {
    RandomInstanceParams p;
    p.n = o.n;
    p.edge_prob = o.edge_prob;
    p.max_weight = o.max_weight;
    p.max_capacity = o.max_capacity;
    p.max_demand = o.max_demand;
    p.zero_prob = o.zero_prob;
    p.seed = o.seed;
    if (p.n < 0 || p.max_weight < 1 || p.max_capacity < 1 || p.max_demand < 1) {
      throw UsageError("n must be >= 0 and attribute maxima >= 1");
    }
    emit(o.output, format_instance(random_instance(p)), out);
    return kOk;
  }
  if (o.kind == "mcq-reduce") {
    if (o.input.empty()) throw UsageError("mcq-reduce needs a clique instance file");
    auto in = open_in(o.input);
    const CliqueInstance cq = load_clique(in);
    const GadgetInstance g = reduce(cq);
    std::ostringstream text;
    text << "c gadget k " << g.k << " N " << g.num_vertices << " budget " << g.budget << '\n';
    save_instance(g.instance, text);
    emit(o.output, text.str(), out);
    std::string roles_path = o.roles;
    if (roles_path.empty() && !o.output.empty() && o.output != "-") roles_path = o.output + ".roles";
    if (!roles_path.empty()) {
      std::ostringstream roles;
      save_roles(g, roles);
      emit(roles_path, roles.str(), out);
    }
    return kOk;
  }
  throw UsageError("gen expects 'random' or 'mcq-reduce'");
}

int do_td(const TdOptions& o, std::ostream& out) {
  const Instance inst = read_instance(o.instance);
  auto heuristic = [&] {
    if (o.heuristic == "min-fill") return EliminationHeuristic::MinFill;
    if (o.heuristic == "min-degree") return EliminationHeuristic::MinDegree;
    throw UsageError("unknown heuristic '" + o.heuristic + "'");
  };
  auto given_or_computed = [&] {
    if (o.td_path.empty()) return heuristic_decomposition(inst, heuristic());
    auto in = open_in(o.td_path);
    return load_td(in);
  };
  if (o.action == "compute") {
    std::ostringstream s;
    save_td(heuristic_decomposition(inst, heuristic()), inst.num_vertices(), s);
    emit(o.output, s.str(), out);
    return kOk;
  }
  if (o.action == "validate") {
    if (o.td_path.empty()) throw UsageError("td validate needs a decomposition file");
    const TreeDecomposition td = given_or_computed();
    const TdReport report = validate_td(inst, td);
    std::ostringstream s;
    s << (report.passed() ? "PASS" : "FAIL") << " width " << td.width() << '\n';
    for (const auto& f : report.failures) s << "  " << f << '\n';
    emit(o.output, s.str(), out);
    return report.passed() ? kOk : kVerifyFailed;
  }
  if (o.action == "nice") {
    const TreeDecomposition td = given_or_computed();
    if (const TdReport report = validate_td(inst, td); !report.passed()) {
      throw InvalidInput("invalid decomposition: " + report.failures.front());
    }
    std::ostringstream s;
    save_nice(make_nice(td), s);
    emit(o.output, s.str(), out);
    return kOk;
  }
  throw UsageError("td expects 'compute', 'validate' or 'nice'");
}

int do_bench(BenchOptions o, std::ostream& out, std::ostream& err) {
  o.config.model = parse_model(o.model);
  if (o.config.unweighted && o.config.model == DemandModel::Unsplittable) {
    throw UsageError("--unweighted applies to the split model");
  }
  const auto rows = run_bench(o.config, o.serial ? Execution::Serial : Execution::Parallel);
  std::ostringstream csv;
  write_bench_csv(rows, csv);
  emit(o.output, csv.str(), out);
  const auto bad = std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) { return !r.within_bound; });
  if (bad > 0) {
    err << bad << " row(s) exceed their ratio bound\n";
    return kVerifyFailed;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Soft-capacitated domination solver suite", "capdom"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "Solve an instance and write a solution");
  s->add_option("--algo", solve.algo, "greedy-unsplit|greedy-split|greedy-unweighted|dp|baker|oracle");
  s->add_option("--model", solve.model, "split|unsplit");
  s->add_option("--k", solve.k, "Baker band parameter (>= 2)");
  s->add_option("--td", solve.td_path, "Tree decomposition for --algo dp (PACE .td)");
  s->add_flag("--trace", solve.trace, "Append greedy trace lines");
  s->add_option("--budget", solve.budget, "Oracle node limit");
  s->add_flag("--serial", solve.serial, "Run the Baker shifts serially");
  s->add_option("-o,--output", solve.output, "Solution file (default stdout)");
  s->add_option("instance", solve.instance)->required();

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Check a solution against an instance");
  v->add_option("--model", verify.model, "split|unsplit (default: from the solution header)");
  v->add_option("instance", verify.instance)->required();
  v->add_option("solution", verify.solution)->required();

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate instances");
  g->add_option("kind", gen.kind, "random|mcq-reduce")->required();
  g->add_option("input", gen.input, "Clique instance for mcq-reduce");
  g->add_option("--n", gen.n);
  g->add_option("--p", gen.edge_prob, "Edge probability");
  g->add_option("--max-w", gen.max_weight);
  g->add_option("--max-c", gen.max_capacity);
  g->add_option("--max-d", gen.max_demand);
  g->add_option("--zero-prob", gen.zero_prob);
  g->add_option("--seed", gen.seed);
  g->add_option("-o,--output", gen.output);
  g->add_option("--roles", gen.roles, "Role sidecar path (default <output>.roles)");

  TdOptions td;
  auto* t = app.add_subcommand("td", "Tree decompositions");
  t->add_option("action", td.action, "compute|validate|nice")->required();
  t->add_option("instance", td.instance)->required();
  t->add_option("decomposition", td.td_path, "Decomposition file (PACE .td)");
  t->add_option("--td", td.td_path, "Decomposition file (PACE .td)");
  t->add_option("--heuristic", td.heuristic, "min-fill|min-degree");
  t->add_option("-o,--output", td.output);

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "Greedy against exact references on seeded batches (CSV)");
  b->add_option("--n", bench.config.n);
  b->add_option("--batch", bench.config.batch);
  b->add_option("--seed", bench.config.seed);
  b->add_option("--model", bench.model, "split|unsplit");
  b->add_flag("--unweighted", bench.config.unweighted);
  b->add_option("--p", bench.config.edge_prob);
  b->add_option("--max-w", bench.config.max_weight);
  b->add_option("--max-c", bench.config.max_capacity);
  b->add_option("--max-d", bench.config.max_demand);
  b->add_option("--zero-prob", bench.config.zero_prob);
  b->add_option("--threshold", bench.config.oracle_threshold, "Largest n compared against the oracle");
  b->add_option("--budget", bench.config.max_nodes, "Oracle node limit");
  b->add_flag("--serial", bench.serial);
  b->add_option("-o,--output", bench.output);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (s->parsed()) return do_solve(solve, out, err);
    if (v->parsed()) return do_verify(verify, out);
    if (g->parsed()) return do_gen(gen, out);
    if (t->parsed()) return do_td(td, out);
    return do_bench(bench, out, err);
  } catch (const InfeasibleInstance& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const BudgetExhausted& e) {
    err << e.what() << '\n';
    return kBudgetExhausted;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace capdom::cli

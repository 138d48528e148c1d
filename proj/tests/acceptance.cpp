// Acceptance checks, one PASS/FAIL line per criterion. Exit status is
// nonzero when any criterion fails.
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "capdom/baker.hpp"
#include "capdom/batch.hpp"
#include "capdom/generators.hpp"
#include "capdom/greedy.hpp"
#include "capdom/hardness.hpp"
#include "capdom/io.hpp"
#include "capdom/oracle.hpp"
#include "capdom/td_dp.hpp"
#include "capdom/treewidth.hpp"
#include "capdom/verify.hpp"
#include "support.hpp"

using namespace capdom;
namespace fs = std::filesystem;

namespace {

struct Tally {
  int64_t checked = 0;
  int64_t failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

constexpr DemandModel kModels[] = {DemandModel::Unsplittable, DemandModel::Splittable};

std::string model_name(DemandModel m) { return std::string(to_string(m)); }

int64_t exact_cost(const Instance& inst, DemandModel model) {
  const OracleResult r = exact_solve(inst, model);
  if (r.status != SearchStatus::Optimal) throw std::runtime_error("oracle did not prove optimality");
  return r.solution->cost;
}

Instance unit_weights(const Instance& inst) {
  std::vector<VertexAttrs> attrs(inst.all_attrs().begin(), inst.all_attrs().end());
  for (auto& a : attrs) a.weight = 1;
  return inst.with_attrs(attrs);
}

RandomInstanceParams mixed(int n, uint64_t seed) {
  return {n, 0.3, 5, 4, 4, 0.15, seed};
}

// Sparser graphs with smaller capacities and demands keep the splittable
// tables manageable up to n = 12.
RandomInstanceParams mixed_large(int n, uint64_t seed) {
  return {n, 0.25, 5, 3, 3, 0.15, seed};
}

Tally feasibility_universality() {
  Tally t;
  for (int i = 0; i < 520; ++i) {
    const uint64_t seed = 1000 + static_cast<uint64_t>(i);
    const int n = 1 + i % 12;
    const Instance inst = random_instance(mixed_large(n, seed));
    const std::string tag = "seed " + std::to_string(seed) + " ";
    auto expect = [&](const std::string& name, const Solution& sol, DemandModel model) {
      t.check(verify_solution(inst, sol, model).passed(), tag + name);
    };
    expect("greedy-unsplit", greedy_unsplittable(inst).solution, DemandModel::Unsplittable);
    expect("greedy-split", greedy_splittable(inst).solution, DemandModel::Splittable);
    const Instance unit = unit_weights(inst);
    t.check(verify_solution(unit, greedy_unweighted_splittable(unit).solution, DemandModel::Splittable).passed(),
            tag + "greedy-unweighted");
    for (DemandModel model : kModels) {
      expect("dp " + model_name(model), solve_td(inst, model), model);
      expect("baker " + model_name(model), baker_solve(inst, 3, model).solution, model);
      const OracleResult r = exact_solve(inst, model);
      t.check(r.solution.has_value(), tag + "oracle found nothing");
      if (r.solution) expect("oracle " + model_name(model), *r.solution, model);
    }
  }
  return t;
}

Tally greedy_ratios() {
  Tally t;
  for (int i = 0; i < 220; ++i) {
    const uint64_t seed = 5000 + static_cast<uint64_t>(i);
    const int n = 1 + i % 9;
    const Instance inst = random_instance(mixed(n, seed));
    const std::string tag = "seed " + std::to_string(seed) + " ";
    const int64_t opt_u = exact_cost(inst, DemandModel::Unsplittable);
    const int64_t opt_s = exact_cost(inst, DemandModel::Splittable);
    t.check(testing::within_harmonic_bound(greedy_unsplittable(inst).solution.cost, opt_u, n, 1, 0),
            tag + "unsplittable above H_n");
    t.check(testing::within_harmonic_bound(greedy_splittable(inst).solution.cost, opt_s, n, 4, 2),
            tag + "splittable above 4H_n+2");
    const Instance unit = unit_weights(inst);
    t.check(testing::within_harmonic_bound(greedy_unweighted_splittable(unit).solution.cost,
                                           exact_cost(unit, DemandModel::Splittable), n, 2, 1),
            tag + "unweighted above 2H_n+1");
  }
  return t;
}

Tally half_residue() {
  Tally t;
  for (int i = 0; i < 300; ++i) {
    const uint64_t seed = 9000 + static_cast<uint64_t>(i);
    const Instance inst = random_instance({1 + i % 12, 0.3, 6, 5, 9, 0.15, seed});
    const GreedyResult r = greedy_splittable(inst);
    for (size_t s = 0; s < r.trace.size(); ++s) {
      const bool boundary = s + 1 == r.trace.size() || r.trace[s + 1].iteration != r.trace[s].iteration;
      if (!boundary) continue;
      for (Vertex v = 0; v < inst.num_vertices(); ++v) {
        const int64_t rd = r.trace[s].residue_after[v];
        const int64_t half = (inst.demand(v) + 1) / 2;
        t.check(!(rd > 0 && rd < half), "seed " + std::to_string(seed) + " vertex " + std::to_string(v + 1));
      }
    }
  }
  return t;
}

Tally phase_zero() {
  Tally t;
  for (int i = 0; i < 120; ++i) {
    const uint64_t seed = 13000 + static_cast<uint64_t>(i);
    const Instance inst = random_instance({1 + i % 9, 0.3, 1, 4, 9, 0.15, seed});
    const GreedyResult r = greedy_unweighted_splittable(inst);
    t.check(r.prepass_cost <= exact_cost(inst, DemandModel::Splittable), "seed " + std::to_string(seed));
  }
  return t;
}

Tally dp_equivalence() {
  Tally t;
  for (DemandModel model : kModels) {
    for (int i = 0; i < 220; ++i) {
      const uint64_t seed = 17000 + static_cast<uint64_t>(i);
      const Instance inst = random_instance(mixed(1 + i % 9, seed));
      const auto h = i % 2 ? EliminationHeuristic::MinDegree : EliminationHeuristic::MinFill;
      DpStats stats;
      const Solution sol = solve_td(inst, make_nice(heuristic_decomposition(inst, h)), model, &stats);
      const std::string tag = model_name(model) + " seed " + std::to_string(seed);
      t.check(sol.cost == exact_cost(inst, model), tag + " cost differs");
      t.check(stats.within_bounds, tag + " table bound exceeded");
    }
  }
  return t;
}

Tally baker_ratio() {
  Tally t;
  std::vector<std::pair<std::string, Instance>> cases;
  const int shapes[][2] = {{1, 5}, {2, 3}, {2, 5}, {3, 3}, {2, 6}, {3, 4}, {1, 12}};
  for (uint64_t seed = 0; seed < 4; ++seed) {
    for (auto [r, c] : shapes) {
      cases.emplace_back("grid " + std::to_string(r) + "x" + std::to_string(c) + " seed " + std::to_string(seed),
                         grid_instance(r, c, {4, 3, 3}, 100 + seed));
    }
    for (int n : {4, 6, 8, 10, 12}) {
      cases.emplace_back("outerplanar " + std::to_string(n) + " seed " + std::to_string(seed),
                         outerplanar_instance(n, 0.5, {4, 3, 3}, 200 + seed));
    }
  }
  for (const auto& [name, inst] : cases) {
    for (DemandModel model : kModels) {
      const int64_t opt = exact_cost(inst, model);
      for (int k : {2, 3, 5}) {
        const BakerResult r = baker_solve(inst, k, model);
        const std::string tag = name + " " + model_name(model) + " k " + std::to_string(k);
        t.check(verify_solution(inst, r.solution, model).passed(), tag + " invalid");
        t.check(r.solution.cost * (k - 1) <= (k + 3) * opt, tag + " above ratio");
        if (k >= r.num_levels) t.check(r.solution.cost == opt, tag + " not exact");
      }
    }
  }
  return t;
}

Tally hardness_semantics() {
  Tally t;
  for (int n = 2; n <= 3; ++n) {
    for (int mask = 1; mask + 1 < (1 << n); ++mask) {
      CliqueInstance base;
      base.k = 2;
      base.num_vertices = n;
      base.parts.assign(2, {});
      for (int v = 0; v < n; ++v) base.parts[(mask >> v) & 1].push_back(v);
      std::vector<Edge> cross;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (((mask >> u) & 1) != ((mask >> v) & 1)) cross.emplace_back(u, v);
      for (int sub = 0; sub < (1 << cross.size()); ++sub) {
        CliqueInstance cq = base;
        for (size_t e = 0; e < cross.size(); ++e)
          if ((sub >> e) & 1) cq.edges.push_back(cross[e]);
        SearchBudget budget;
        budget.max_nodes = 2'000'000'000;
        const SemanticsReport r = verify_semantics(cq, reduce(cq), budget);
        const std::string tag = "N " + std::to_string(n) + " colouring " + std::to_string(mask) + " edges " +
                                std::to_string(sub);
        t.check(r.verdict == Verdict::Pass, tag);
      }
    }
  }
  return t;
}

Tally hardness_structure() {
  Tally t;
  std::mt19937_64 gen(77);
  for (int k = 1; k <= 4; ++k) {
    for (int n = k; n <= 8; ++n) {
      for (int rep = 0; rep < 6; ++rep) {
        CliqueInstance cq;
        cq.k = k;
        cq.num_vertices = n;
        cq.parts.assign(k, {});
        for (int v = 0; v < n; ++v) {
          const int color = v < k ? v : static_cast<int>(rng::uniform(gen, 0, k - 1));
          cq.parts[color].push_back(v);
        }
        std::vector<int> color(n);
        for (int i = 0; i < k; ++i)
          for (int v : cq.parts[i]) color[v] = i;
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v)
            if (color[u] != color[v] && rng::bernoulli(gen, 0.5)) cq.edges.emplace_back(u, v);
        const StructureReport r = verify_structure(reduce(cq));
        t.check(r.passed(), "k " + std::to_string(k) + " N " + std::to_string(n) + ": " +
                                (r.failures.empty() ? "" : r.failures.front()));
      }
    }
  }
  return t;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Tally determinism() {
  Tally t;
  const fs::path dir = fs::temp_directory_path() / ("capdom_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = CAPDOM_CLI_PATH;
  auto sh = [&](const std::string& args) {
    return std::system((cli + " " + args + " 2>/dev/null").c_str());
  };
  for (int seed = 1; seed <= 4; ++seed) {
    const fs::path inst = dir / ("inst" + std::to_string(seed) + ".txt");
    const std::string gen = "gen random --n 11 --p 0.3 --max-d 4 --max-c 4 --zero-prob 0.1 --seed " +
                            std::to_string(seed) + " -o ";
    t.check(sh(gen + inst.string()) == 0, "gen failed");
    t.check(sh(gen + (dir / "again.txt").string()) == 0 && slurp(inst) == slurp(dir / "again.txt"),
            "gen differs for seed " + std::to_string(seed));
    for (const std::string algo : {"greedy-unsplit", "greedy-split", "dp", "baker", "oracle"}) {
      for (const std::string model : {"unsplit", "split"}) {
        if (algo == "greedy-unsplit" && model == "split") continue;
        if (algo == "greedy-split" && model == "unsplit") continue;
        const std::string base = "solve --algo " + algo + " --model " + model + " ";
        std::vector<std::string> outs;
        for (int run = 0; run < 3; ++run) {
          const fs::path out = dir / ("sol" + std::to_string(run));
          const std::string extra = algo == "baker" && run == 2 ? "--serial " : "";
          t.check(sh(base + extra + "-o " + out.string() + " " + inst.string()) == 0, algo + " failed");
          outs.push_back(slurp(out));
        }
        t.check(outs[0] == outs[1] && outs[1] == outs[2] && !outs[0].empty(),
                algo + " " + model + " output differs for seed " + std::to_string(seed));
      }
    }
  }
  for (const std::string model : {"unsplit", "split"}) {
    const std::string base = "bench --n 8 --batch 20 --seed 11 --model " + model + " -o ";
    t.check(sh(base + (dir / "a.csv").string()) == 0, "bench failed");
    t.check(sh(base + (dir / "b.csv").string()) == 0, "bench failed");
    t.check(sh(base + (dir / "c.csv").string() + " --serial") == 0, "serial bench failed");
    const std::string a = slurp(dir / "a.csv");
    t.check(!a.empty() && a == slurp(dir / "b.csv") && a == slurp(dir / "c.csv"), model + " bench csv differs");
  }
  fs::remove_all(dir);
  return t;
}

}  // namespace

int main() {
  bool all = true;
  auto report = [&](int id, const std::string& title, const std::function<Tally()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    try {
      t = body();
    } catch (const std::exception& e) {
      t.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = t.failures == 0 && t.checked > 0;
    all &= ok;
    std::printf("CRITERION %d %s: %s (%lld checks, %lld failures, %.1fs)%s\n", id, ok ? "PASS" : "FAIL",
                title.c_str(), static_cast<long long>(t.checked), static_cast<long long>(t.failures), secs,
                t.failures ? (" first: " + t.first_failure).c_str() : "");
    std::fflush(stdout);
  };
  report(1, "every solver output verifies", feasibility_universality);
  report(2, "greedy ratio bounds against the oracle", greedy_ratios);
  report(3, "no residue below half demand at iteration boundaries", half_residue);
  report(4, "pre-pass cost at most OPT", phase_zero);
  report(5, "DP cost equals oracle cost", dp_equivalence);
  report(6, "Baker cost within (1+4/(k-1))OPT, exact for k >= levels", baker_ratio);
  report(7, "clique exists iff gadget optimum <= k*", hardness_semantics);
  report(8, "gadget structure", hardness_structure);
  report(9, "byte-identical solutions and bench CSVs", determinism);
  return all ? 0 : 1;
}

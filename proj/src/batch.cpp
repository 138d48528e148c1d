#include "capdom/batch.hpp"

#include <cstdio>
#include <ostream>

#include "capdom/errors.hpp"
#include "capdom/generators.hpp"
#include "capdom/greedy.hpp"
#include "capdom/oracle.hpp"
#include "capdom/td_dp.hpp"

namespace capdom {
namespace {

struct Item {
  std::vector<BenchRow> rows;
};

BenchRow make_row(int index, uint64_t seed, const Instance& inst, std::string algo, int64_t cost,
                  int64_t reference, const std::string& kind, std::pair<int64_t, int64_t> bound) {
  BenchRow row;
  row.index = index;
  row.seed = seed;
  row.n = inst.num_vertices();
  row.m = inst.num_edges();
  row.algo = std::move(algo);
  row.cost = cost;
  row.reference = reference;
  row.reference_kind = kind;
  row.bound_num = bound.first;
  row.bound_den = bound.second;
  row.within_bound = static_cast<__int128>(cost) * bound.second <= static_cast<__int128>(reference) * bound.first;
  return row;
}

Item run_item(const BenchConfig& cfg, int index) {
  const uint64_t seed = item_seed(cfg.seed, index);
  RandomInstanceParams params;
  params.n = cfg.n;
  params.edge_prob = cfg.edge_prob;
  params.max_weight = cfg.unweighted ? 1 : cfg.max_weight;
  params.max_capacity = cfg.max_capacity;
  params.max_demand = cfg.max_demand;
  params.zero_prob = cfg.zero_prob;
  params.seed = seed;
  const Instance inst = random_instance(params);

  int64_t reference = 0;
  std::string kind;
  if (cfg.n <= cfg.oracle_threshold) {
    SearchBudget budget;
    budget.max_nodes = cfg.max_nodes;
    const OracleResult res = exact_solve(inst, cfg.model, budget);
    if (!res.proven()) {
      throw BudgetExhausted("oracle node budget exhausted on batch item " + std::to_string(index));
    }
    reference = res.solution->cost;
    kind = "oracle";
  } else {
    reference = solve_td(inst, cfg.model).cost;
    kind = "dp";
  }

  const auto [hn, hd] = harmonic(inst.num_vertices());
  Item item;
  if (cfg.model == DemandModel::Unsplittable) {
    item.rows.push_back(make_row(index, seed, inst, "greedy-unsplit", greedy_unsplittable(inst).solution.cost,
                                 reference, kind, {hn, hd}));
  } else {
    item.rows.push_back(make_row(index, seed, inst, "greedy-split", greedy_splittable(inst).solution.cost,
                                 reference, kind, {4 * hn + 2 * hd, hd}));
    if (cfg.unweighted) {
      item.rows.push_back(make_row(index, seed, inst, "greedy-unweighted",
                                   greedy_unweighted_splittable(inst).solution.cost, reference, kind,
                                   {2 * hn + hd, hd}));
    }
  }
  return item;
}

}  // namespace

uint64_t item_seed(uint64_t seed, int index) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::pair<int64_t, int64_t> harmonic(int n) {
  if (n < 0 || n > 40) throw InvalidInput("harmonic number only tabulated for n <= 40");
  __int128 num = 0;
  __int128 den = 1;
  for (int i = 1; i <= n; ++i) {
    num = num * i + den;
    den *= i;
    __int128 a = num;
    __int128 b = den;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    num /= a;
    den /= a;
  }
  return {static_cast<int64_t>(num), static_cast<int64_t>(den)};
}

std::vector<BenchRow> run_bench(const BenchConfig& config, Execution exec) {
  if (config.n < 1 || config.batch < 0) throw InvalidInput("bench needs n >= 1 and batch >= 0");
  std::vector<Item> items(config.batch);
  for_each_index(config.batch, exec, [&](int i) { items[i] = run_item(config, i); });
  std::vector<BenchRow> rows;
  for (auto& item : items) {
    for (auto& row : item.rows) rows.push_back(std::move(row));
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "index,seed,n,m,algo,cost,reference,reference_kind,ratio,bound,within_bound\n";
  char ratio[32];
  char bound[32];
  for (const BenchRow& r : rows) {
    // Ratios are printed from exact integers so the text is reproducible.
    if (r.reference == 0) {
      std::snprintf(ratio, sizeof ratio, "%s", r.cost == 0 ? "1.000000" : "inf");
    } else {
      std::snprintf(ratio, sizeof ratio, "%.6f", static_cast<double>(r.cost) / static_cast<double>(r.reference));
    }
    std::snprintf(bound, sizeof bound, "%.6f", static_cast<double>(r.bound_num) / static_cast<double>(r.bound_den));
    out << r.index << ',' << r.seed << ',' << r.n << ',' << r.m << ',' << r.algo << ',' << r.cost << ','
        << r.reference << ',' << r.reference_kind << ',' << ratio << ',' << bound << ','
        << (r.within_bound ? 1 : 0) << '\n';
  }
}

}  // namespace capdom

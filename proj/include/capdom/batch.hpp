#pragma once

// Seeded batches of random instances: greedy cost against an exact
// reference (oracle for small n, the tree-decomposition DP otherwise).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "capdom/instance.hpp"
#include "capdom/parallel.hpp"

namespace capdom {

struct BenchConfig {
  int n = 8;
  int batch = 50;
  uint64_t seed = 1;
  DemandModel model = DemandModel::Unsplittable;
  // Unit weights; the splittable model then also runs the unweighted greedy.
  bool unweighted = false;
  double edge_prob = 0.4;
  int64_t max_weight = 5;
  int64_t max_capacity = 5;
  int64_t max_demand = 5;
  double zero_prob = 0.1;
  int oracle_threshold = 9;
  int64_t max_nodes = 20'000'000;
};

struct BenchRow {
  int index = 0;
  uint64_t seed = 0;
  int n = 0;
  int64_t m = 0;
  std::string algo;
  int64_t cost = 0;
  int64_t reference = 0;
  std::string reference_kind;  // "oracle" or "dp"
  // Guarantee for `algo` at this n as an exact fraction num/den.
  int64_t bound_num = 0;
  int64_t bound_den = 1;
  bool within_bound = true;
};

// Per-item seed, derived with splitmix64 from the batch seed and index.
uint64_t item_seed(uint64_t seed, int index);

// H_n = num/den in lowest terms. Valid for n <= 40.
std::pair<int64_t, int64_t> harmonic(int n);

// Throws BudgetExhausted if an oracle run hits its node limit.
std::vector<BenchRow> run_bench(const BenchConfig& config, Execution exec = Execution::Parallel);

// Header plus one line per row; ratio printed with 6 decimals.
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace capdom

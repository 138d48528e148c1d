#include <doctest.h>

#include "capdom/errors.hpp"
#include "capdom/generators.hpp"
#include "capdom/oracle.hpp"
#include "capdom/verify.hpp"
#include "support.hpp"

using namespace capdom;
using capdom::testing::make_instance;

namespace {

int64_t optimum(const Instance& inst, DemandModel model) {
  const OracleResult r = exact_solve(inst, model);
  REQUIRE(r.status == SearchStatus::Optimal);
  REQUIRE(r.solution);
  CHECK(verify_solution(inst, *r.solution, model).passed());
  return r.solution->cost;
}

}  // namespace

TEST_CASE("oracle examples") {
  const Instance single = make_instance({{2, 3, 7}}, {});
  CHECK(optimum(single, DemandModel::Unsplittable) == 6);
  CHECK(optimum(single, DemandModel::Splittable) == 6);

  CHECK(optimum(capdom::testing::p3(), DemandModel::Unsplittable) == 3);
  CHECK(optimum(capdom::testing::p3(), DemandModel::Splittable) == 3);

  const Instance star = make_instance({{1, 10, 0}, {5, 1, 2}, {5, 1, 2}, {5, 1, 2}},
                                      {{0, 1}, {0, 2}, {0, 3}});
  CHECK(optimum(star, DemandModel::Unsplittable) == 1);

  const Instance pair = make_instance({{1, 2, 3}, {1, 2, 0}}, {{0, 1}});
  CHECK(optimum(pair, DemandModel::Splittable) == 2);
  CHECK(optimum(pair, DemandModel::Unsplittable) == 2);

  const Instance zero = make_instance({{1, 1, 0}, {2, 2, 0}}, {{0, 1}});
  CHECK(optimum(zero, DemandModel::Unsplittable) == 0);
  CHECK(optimum(zero, DemandModel::Splittable) == 0);

  const Instance bad = make_instance({{1, 0, 1}}, {});
  CHECK_THROWS_AS(exact_solve(bad, DemandModel::Splittable), InfeasibleInstance);
  CHECK_THROWS_AS(exact_solve(bad, DemandModel::Unsplittable), InfeasibleInstance);
}

TEST_CASE("splitting can beat unsplittable service") {
  // u can only use s2; v fills the spare unit of s2 and one copy of s1.
  const Instance inst = make_instance({{1, 1, 0}, {2, 3, 0}, {1, 0, 2}, {1, 0, 2}},
                                      {{0, 2}, {1, 2}, {1, 3}});
  CHECK(optimum(inst, DemandModel::Splittable) == 3);
  CHECK(optimum(inst, DemandModel::Unsplittable) == 4);
  CHECK(capdom::testing::brute_splittable(inst) == 3);
  CHECK(capdom::testing::brute_unsplittable(inst) == 4);
}

TEST_CASE("feasibility_flow examples") {
  const Instance pair = make_instance({{1, 2, 3}, {1, 2, 0}}, {{0, 1}});
  const std::vector<int64_t> both{1, 1};
  const auto flow = feasibility_flow(pair, both);
  REQUIRE(flow);
  int64_t total = 0;
  for (const Triple& t : *flow) total += t.amount;
  CHECK(total == 3);
  CHECK(verify_solution(pair, Solution{both, *flow, 2}, DemandModel::Splittable).passed());

  const std::vector<int64_t> one{1, 0};
  CHECK_FALSE(feasibility_flow(pair, one));
  const std::vector<int64_t> none{0, 0};
  CHECK_FALSE(feasibility_flow(pair, none));
}

TEST_CASE("oracle agrees with brute force") {
  for (uint64_t seed = 0; seed < 120; ++seed) {
    const int n = 1 + static_cast<int>(seed % 7);
    const Instance inst = random_instance({n, 0.4, 5, 4, 4, 0.2, seed});
    const int64_t unsplit = optimum(inst, DemandModel::Unsplittable);
    const int64_t split = optimum(inst, DemandModel::Splittable);
    CHECK(unsplit == *capdom::testing::brute_unsplittable(inst));
    CHECK(split == *capdom::testing::brute_splittable(inst));
    CHECK(split <= unsplit);
  }
}

TEST_CASE("upper bound mode") {
  const Instance inst = capdom::testing::p3();
  SearchBudget tight;
  tight.upper_bound = 2;
  CHECK(exact_solve(inst, DemandModel::Unsplittable, tight).status == SearchStatus::NoneWithinBound);
  SearchBudget loose;
  loose.upper_bound = 3;
  const OracleResult r = exact_solve(inst, DemandModel::Unsplittable, loose);
  REQUIRE(r.solution);
  CHECK(r.solution->cost <= 3);
}

TEST_CASE("node budget is reported") {
  const Instance inst = random_instance({12, 0.3, 9, 4, 9, 0.0, 3});
  SearchBudget budget;
  budget.max_nodes = 5;
  const OracleResult r = exact_solve(inst, DemandModel::Splittable, budget);
  CHECK(r.status == SearchStatus::BudgetExhausted);
  CHECK_FALSE(r.proven());
}

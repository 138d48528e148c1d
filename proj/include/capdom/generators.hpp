#pragma once

#include <cstdint>
#include <random>

#include "capdom/instance.hpp"

namespace capdom {

// All generators draw from a single std::mt19937_64 seeded by the caller and
// use their own integer/probability mapping, so output is identical across
// standard library implementations.
struct RandomInstanceParams {
  int n = 1;
  double edge_prob = 0.3;
  int64_t max_weight = 1;
  int64_t max_capacity = 1;
  int64_t max_demand = 1;
  // Probability that a drawn capacity or demand is replaced by zero
  // ("mixed" attributes). Zero keeps every attribute in [1, max].
  double zero_prob = 0.0;
  uint64_t seed = 0;
};

// Attributes uniform in [1, max]. Post-pass: a vertex with positive demand
// and no positive-capacity closed neighbor gets c(v) = 1.
Instance random_instance(const RandomInstanceParams& params);

struct AttrRange {
  int64_t max_weight = 1;
  int64_t max_capacity = 1;
  int64_t max_demand = 1;
};

// rows × cols grid graph, vertex r·cols + c.
Instance grid_instance(int rows, int cols, const AttrRange& range, uint64_t seed);

// Cycle 0..n-1 plus random non-crossing chords: a maximal-ish outerplanar
// graph drawn by recursively splitting the polygon.
Instance outerplanar_instance(int n, double chord_prob, const AttrRange& range, uint64_t seed);

namespace rng {

// Uniform integer in [lo, hi] by rejection on the top of the 64-bit range.
int64_t uniform(std::mt19937_64& gen, int64_t lo, int64_t hi);
// True with probability p, using 53 random bits.
bool bernoulli(std::mt19937_64& gen, double p);

}  // namespace rng

}  // namespace capdom

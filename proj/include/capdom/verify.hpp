#pragma once

#include <string>
#include <vector>

#include "capdom/instance.hpp"

namespace capdom {

enum class ViolationKind {
  Structure,     // malformed triple, server outside N[consumer], duplicate pair
  Demand,        // Σ_{u∈N[v]} f(v,u) < d(v)
  Capacity,      // Σ_{u∈N[v]} f(u,v) > c(v)·x(v)
  Cost,          // cost field != Σ w(u)·x(u)
  Unsplittable,  // consumer not served by a single triple of amount d(v)
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  Vertex vertex;  // -1 when not tied to a vertex
  std::string detail;
};

struct VerificationReport {
  std::vector<Violation> violations;

  bool passed() const noexcept { return violations.empty(); }
  bool has(ViolationKind kind, Vertex vertex) const;
  // "PASS" or "FAIL" followed by one line per violation.
  std::string to_string() const;
};

VerificationReport verify_solution(const Instance& inst, const Solution& sol, DemandModel model);

// x(u) = ⌈load(u)/c(u)⌉ for the given assignment; cost recomputed.
// Throws ZeroCapacityServer if a positive amount targets a c = 0 vertex.
Solution minimum_multiplicities(const Instance& inst, Assignment assignment);

}  // namespace capdom

#include "capdom/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "capdom/errors.hpp"

namespace capdom {
namespace {

std::string id(Vertex v) { return std::to_string(v + 1); }

std::string to_decimal(__int128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  std::string out;
  while (value != 0) {
    const int digit = static_cast<int>(value % 10);
    out.push_back(static_cast<char>('0' + (negative ? -digit : digit)));
    value /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Structure: return "structure";
    case ViolationKind::Demand: return "demand";
    case ViolationKind::Capacity: return "capacity";
    case ViolationKind::Cost: return "cost";
    case ViolationKind::Unsplittable: return "unsplittable";
  }
  return "unknown";
}

bool VerificationReport::has(ViolationKind kind, Vertex vertex) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) {
    return v.kind == kind && v.vertex == vertex;
  });
}

std::string VerificationReport::to_string() const {
  std::ostringstream out;
  out << (passed() ? "PASS" : "FAIL") << '\n';
  for (const Violation& v : violations) {
    out << capdom::to_string(v.kind);
    if (v.vertex >= 0) out << " at vertex " << v.vertex + 1;
    out << ": " << v.detail << '\n';
  }
  return out.str();
}

VerificationReport verify_solution(const Instance& inst, const Solution& sol, DemandModel model) {
  VerificationReport report;
  auto add = [&](ViolationKind kind, Vertex v, std::string detail) {
    report.violations.push_back({kind, v, std::move(detail)});
  };
  const int n = inst.num_vertices();
  if (static_cast<int>(sol.multiplicity.size()) != n) {
    add(ViolationKind::Structure, -1, "multiplicity vector has wrong size");
    return report;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (sol.multiplicity[v] < 0) add(ViolationKind::Structure, v, "negative multiplicity");
  }

  // Loads are accumulated in 128 bits: a hostile solution file may carry
  // amounts whose sum overflows int64_t.
  std::vector<__int128> served(n, 0);
  std::vector<__int128> load(n, 0);
  std::vector<int> triples_per_consumer(n, 0);
  std::vector<int64_t> single_amount(n, 0);
  std::set<std::pair<Vertex, Vertex>> pairs;
  for (const Triple& t : sol.assignment) {
    if (t.consumer < 0 || t.consumer >= n || t.server < 0 || t.server >= n) {
      add(ViolationKind::Structure, -1, "triple references a vertex out of range");
      continue;
    }
    if (t.amount <= 0) {
      add(ViolationKind::Structure, t.consumer, "non-positive amount");
      continue;
    }
    if (!inst.in_closed_neighborhood(t.consumer, t.server)) {
      add(ViolationKind::Structure, t.consumer,
          "server " + id(t.server) + " is not in the closed neighborhood");
      continue;
    }
    if (!pairs.insert({t.consumer, t.server}).second) {
      add(ViolationKind::Structure, t.consumer, "duplicate triple for server " + id(t.server));
    }
    served[t.consumer] += t.amount;
    load[t.server] += t.amount;
    ++triples_per_consumer[t.consumer];
    single_amount[t.consumer] = t.amount;
  }

  for (Vertex v = 0; v < n; ++v) {
    const int64_t d = inst.demand(v);
    if (served[v] < d) {
      add(ViolationKind::Demand, v,
          "served " + to_decimal(served[v]) + " < demand " + std::to_string(d));
    }
    const __int128 cap = static_cast<__int128>(inst.capacity(v)) * std::max<int64_t>(sol.multiplicity[v], 0);
    if (load[v] > cap) {
      add(ViolationKind::Capacity, v,
          "load " + to_decimal(load[v]) + " > capacity " + to_decimal(cap));
    }
    if (model == DemandModel::Unsplittable && d > 0) {
      if (triples_per_consumer[v] != 1 || single_amount[v] != d) {
        add(ViolationKind::Unsplittable, v,
            "expected one triple of amount " + std::to_string(d) + ", found " +
                std::to_string(triples_per_consumer[v]) + " triple(s)");
      }
    }
  }

  __int128 cost = 0;
  for (Vertex v = 0; v < n; ++v) {
    cost += static_cast<__int128>(inst.weight(v)) * std::max<int64_t>(sol.multiplicity[v], 0);
  }
  if (cost != sol.cost) {
    add(ViolationKind::Cost, -1,
        "cost field " + std::to_string(sol.cost) + " != " + to_decimal(cost));
  }
  return report;
}

Solution minimum_multiplicities(const Instance& inst, Assignment assignment) {
  normalize(assignment);
  Solution sol;
  sol.multiplicity.assign(static_cast<size_t>(inst.num_vertices()), 0);
  std::vector<int64_t> load(static_cast<size_t>(inst.num_vertices()), 0);
  for (const Triple& t : assignment) load[t.server] += t.amount;
  for (Vertex u = 0; u < inst.num_vertices(); ++u) {
    if (load[u] == 0) continue;
    const int64_t c = inst.capacity(u);
    if (c == 0) throw ZeroCapacityServer(u);
    sol.multiplicity[u] = (load[u] + c - 1) / c;
  }
  sol.assignment = std::move(assignment);
  sol.cost = solution_cost(inst, sol.multiplicity);
  return sol;
}

}  // namespace capdom

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "capdom/instance.hpp"

namespace capdom {

// Instance format (line based, ASCII):
//   c <comment>
//   p capdom <n> <m>
//   v <id> <weight> <capacity> <demand>     (n lines, ids 1..n)
//   e <u> <v>                               (m lines, u != v)
// Throws ParseError with the offending line number.
Instance load_instance(std::istream& in);
Instance parse_instance(std::string_view text);

// Canonical form: vertices in id order, edges smaller endpoint first, sorted.
void save_instance(const Instance& inst, std::ostream& out);
std::string format_instance(const Instance& inst);

// Solution format:
//   s capdom <cost> <split|unsplit>
//   x <vertex> <count>                      (nonzero only)
//   a <consumer> <server> <amount>          (nonzero only)
struct SolutionFile {
  Solution solution;
  DemandModel model = DemandModel::Unsplittable;
};

// `num_vertices` sizes the multiplicity vector and bounds vertex ids.
SolutionFile load_solution(std::istream& in, int num_vertices);
SolutionFile parse_solution(std::string_view text, int num_vertices);

// x lines in vertex order, a lines sorted by (consumer, server).
void save_solution(const Solution& sol, DemandModel model, std::ostream& out);
std::string format_solution(const Solution& sol, DemandModel model);

}  // namespace capdom

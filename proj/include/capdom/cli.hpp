#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace capdom::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInfeasible = 3;
inline constexpr int kBudgetExhausted = 4;

// capdom <solve|verify|gen|td|bench> [flags] [files]
// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace capdom::cli

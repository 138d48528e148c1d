#pragma once

// Shared tokenizer for the line-based text formats.

#include <charconv>
#include <cstdint>
#include <istream>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "capdom/errors.hpp"

namespace capdom::text {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line that is neither blank nor a `c` comment, split on whitespace.
  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, line_)) {
      ++line_no_;
      if (!line_.empty() && line_.back() == '\r') line_.pop_back();
      tokens.clear();
      split(line_, tokens);
      if (tokens.empty()) continue;
      if (tokens[0] == "c") continue;
      return true;
    }
    return false;
  }

  int line() const noexcept { return line_no_; }

  [[noreturn]] void fail(const std::string& reason) const {
    throw ParseError(line_no_, reason);
  }

  int64_t integer(std::string_view token, int64_t lo = 0,
                  int64_t hi = std::numeric_limits<int64_t>::max()) const {
    int64_t value = 0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) fail("integer out of range: " + std::string(token));
    if (ec != std::errc{} || ptr != last) fail("expected integer, got '" + std::string(token) + "'");
    if (value < lo || value > hi) fail("value " + std::string(token) + " out of range");
    return value;
  }

  void expect_arity(const std::vector<std::string_view>& tokens, size_t n) const {
    if (tokens.size() != n) {
      fail("expected " + std::to_string(n) + " fields, got " + std::to_string(tokens.size()));
    }
  }

 private:
  static void split(std::string_view s, std::vector<std::string_view>& out) {
    size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
      size_t j = i;
      while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
      if (j > i) out.push_back(s.substr(i, j - i));
      i = j;
    }
  }

  std::istream& in_;
  std::string line_;
  int line_no_ = 0;
};

}  // namespace capdom::text

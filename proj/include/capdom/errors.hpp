#pragma once

#include <stdexcept>
#include <string>

namespace capdom {

// Base for every error raised by the library. Violations found by the
// verifiers are reported as data, not thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InfeasibleInstance : public Error {
 public:
  using Error::Error;
};

class ZeroCapacityServer : public Error {
 public:
  explicit ZeroCapacityServer(int vertex)
      : Error("vertex " + std::to_string(vertex + 1) +
              " receives demand but has zero capacity"),
        vertex_(vertex) {}
  int vertex() const noexcept { return vertex_; }

 private:
  int vertex_;
};

class NotUnweighted : public Error {
 public:
  using Error::Error;
};

class NoCandidates : public Error {
 public:
  using Error::Error;
};

class EmptyTable : public Error {
 public:
  using Error::Error;
};

class Disconnected : public Error {
 public:
  using Error::Error;
};

class MergeConflict : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class InvalidCliqueInstance : public Error {
 public:
  using Error::Error;
};

}  // namespace capdom

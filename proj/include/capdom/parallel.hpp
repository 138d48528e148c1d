#pragma once

#include <exception>
#include <vector>

namespace capdom {

enum class Execution { Serial, Parallel };

// Calls fn(i) for i in [0, count). Parallel runs under OpenMP; the first
// exception by index is rethrown after every iteration has finished, so both
// paths report the same error.
template <class Fn>
void for_each_index(int count, Execution exec, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count > 0 ? count : 0);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace capdom

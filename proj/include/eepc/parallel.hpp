#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace eepc {

enum class Execution { Serial, Parallel };

/// Caps the OpenMP worker count (<= 0 restores the runtime default).
void set_worker_count(int jobs);
int worker_count();

/// Runs fn(k) for k in [0, n) and returns the results indexed by k. The
/// parallel path distributes indices over OpenMP threads; results are merged
/// by index so both paths return identical vectors. An exception thrown by
/// any fn(k) is rethrown after the loop (lowest k first).
template <typename Result, typename Fn>
std::vector<Result> map_indexed(std::size_t n, Fn&& fn, Execution exec = Execution::Parallel) {
  std::vector<Result> out(n);
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long k = 0; k < count; ++k) {
      try {
        out[static_cast<std::size_t>(k)] = fn(static_cast<std::size_t>(k));
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
  } else {
    for (long long k = 0; k < count; ++k) {
      try {
        out[static_cast<std::size_t>(k)] = fn(static_cast<std::size_t>(k));
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace eepc

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tatess {

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Each index is handled
/// exactly once, so results written to per-index slots do not depend on the worker count.
/// If several calls throw, the exception from the smallest index is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t threads = std::min<std::size_t>(workers, count);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::size_t> error_index(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += threads) {
        try {
          fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
          error_index[w] = i;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  std::size_t first = threads;
  for (std::size_t w = 0; w < threads; ++w)
    if (errors[w] && (first == threads || error_index[w] < error_index[first])) first = w;
  if (first != threads) std::rethrow_exception(errors[first]);
}

}  // namespace tatess

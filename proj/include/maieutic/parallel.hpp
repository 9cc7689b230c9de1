#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace maieutic {

// Runs fn(i) for i in [0, n) on up to `workers` threads and returns the
// results in index order. The first exception thrown (lowest index) is
// rethrown after all workers finish.
template <typename Result>
std::vector<Result> parallel_map(std::size_t n, std::size_t workers,
                                 const std::function<Result(std::size_t)>& fn) {
  std::vector<Result> results(n);
  std::vector<std::exception_ptr> errors(n);
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          results[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace maieutic

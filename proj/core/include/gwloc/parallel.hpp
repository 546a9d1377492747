#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace gwloc {

inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(0..count-1) on up to `workers` threads. Results land at
/// their own index, so any reduction over the returned vector is independent
/// of scheduling. If several calls throw, the lowest-index exception wins.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, unsigned workers, Fn&& fn) {
  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto drain = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(drain);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace gwloc

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace capdisc {

// Worker count: CAPDISC_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t thread_count();

// Splits [0, n) into contiguous chunks and calls body(chunk, begin, end) for
// each, possibly concurrently. Chunk boundaries depend only on n and the
// returned chunk count, so per-chunk partial results merged in chunk order
// give schedule-independent output.
template <class Body>
std::size_t parallel_chunks(std::size_t n, Body&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(thread_count(), n));
  if (workers == 1) {
    body(std::size_t{0}, std::size_t{0}, n);
    return 1;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        try {
          body(w, begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return workers;
}

}  // namespace capdisc

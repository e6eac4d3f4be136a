#pragma once

#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace vipkit {

// Process-wide worker count. 0 means "use hardware_concurrency".
void set_thread_count(unsigned n);
unsigned thread_count();

// Chunked parallel loop over [begin, end). Each index is handled by exactly
// one task, so disjoint writes are race-free and results do not depend on
// the number of workers.
template <class F>
void parallel_for(std::size_t begin, std::size_t end, F&& fn) {
  const std::size_t total = end > begin ? end - begin : 0;
  unsigned workers = thread_count();
  if (workers == 0) workers = std::thread::hardware_concurrency();
  if (workers <= 1 || total < 2048) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  if (workers > total) workers = static_cast<unsigned>(total);
  const std::size_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = begin + static_cast<std::size_t>(w) * chunk;
    if (lo >= end) break;
    const std::size_t hi = lo + chunk < end ? lo + chunk : end;
    threads.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace vipkit

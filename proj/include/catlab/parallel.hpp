#pragma once

#include <atomic>
#include <thread>
#include <vector>

#include "catlab/arithmetic.hpp"

namespace catlab {

// runs fn(i) for i = 0..n-1 on up to `jobs` workers; callers write results
// into index-addressed slots, so the merged output is order-independent
template <class F>
void parallel_for_indices(i64 n, int jobs, F&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (i64 i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<i64> next{0};
  std::vector<std::thread> workers;
  int count = static_cast<int>(std::min<i64>(jobs, n));
  workers.reserve(count);
  for (int w = 0; w < count; ++w)
    workers.emplace_back([&] {
      for (i64 i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& t : workers) t.join();
}

}  // namespace catlab

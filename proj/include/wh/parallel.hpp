#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace wh {

namespace detail {
inline std::atomic<int>& thread_count() {
  static std::atomic<int> n{1};
  return n;
}
}  // namespace detail

/// Process-wide worker count for parallel loops (set from the CLI).
inline void set_threads(int n) { detail::thread_count().store(n < 1 ? 1 : n); }
inline int threads() { return detail::thread_count().load(); }

/// Runs fn(begin, end) over fixed-size chunks of [0, n). The chunk
/// decomposition depends only on n, never on the worker count, so any
/// reduction that combines per-chunk partials in chunk order is bitwise
/// reproducible across thread counts. fn must write disjoint state per chunk.
inline void parallel_for(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn,
                         std::size_t chunk = 16) {
  if (n == 0) return;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  const int nthreads =
      static_cast<int>(std::min<std::size_t>(nchunks, std::max(1, threads())));
  if (nthreads <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) {
      fn(c * chunk, std::min(n, (c + 1) * chunk));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= nchunks) break;
      fn(c * chunk, std::min(n, (c + 1) * chunk));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads - 1);
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace wh

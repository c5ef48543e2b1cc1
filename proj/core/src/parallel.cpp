#include "direm/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace direm {

int worker_threads() {
  static const int cached = [] {
    if (const char* env = std::getenv("DIREM_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1 && v <= 256) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }();
  return cached;
}

void parallel_chunks(index_t total, index_t chunk_size,
                     const std::function<void(index_t, index_t, index_t)>& fn) {
  const index_t n_chunks = chunk_count(total, chunk_size);
  if (n_chunks <= 0) return;

  auto run_chunk = [&](index_t c) {
    const index_t begin = c * chunk_size;
    const index_t end = std::min(total, begin + chunk_size);
    fn(c, begin, end);
  };

  const int threads = std::min<index_t>(worker_threads(), n_chunks);
  if (threads <= 1) {
    for (index_t c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }

  std::atomic<index_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const index_t c = next.fetch_add(1);
        if (c >= n_chunks) return;
        run_chunk(c);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace direm

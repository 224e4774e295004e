#include "decaylab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace decaylab {

int worker_count() {
  static int cached = [] {
    const char* env = std::getenv("DECAYLAB_WORKERS");
    int n = 1;
    if (env) n = std::max(1, std::atoi(env));
    unsigned hw = std::thread::hardware_concurrency();
    if (hw > 0) n = std::min<int>(n, static_cast<int>(hw));
    return n;
  }();
  return cached;
}

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  const int workers = worker_count();
  if (workers <= 1 || nchunks <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) fn(c * kChunk, std::min(n, (c + 1) * kChunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      fn(c * kChunk, std::min(n, (c + 1) * kChunk));
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

}  // namespace decaylab

#pragma once

#include <cstddef>
#include <functional>

namespace decaylab {

/// Worker count from DECAYLAB_WORKERS (default 1, clamped to hardware).
int worker_count();

/// Runs fn(begin, end) over fixed-size chunks of [0, n). Chunk boundaries do
/// not depend on the worker count, so chunk-local reductions combined in
/// chunk order stay deterministic.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

constexpr std::size_t kChunk = 4096;

}  // namespace decaylab

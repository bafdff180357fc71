#pragma once

#include <cstddef>
#include <functional>

namespace coarse {

// Number of worker threads: hardware concurrency capped by the
// COARSE_LAB_THREADS environment variable (1 disables threading).
std::size_t worker_count();

// Splits [0, n) into contiguous chunks and runs body(begin, end) on each.
// Chunks are disjoint, so bodies may write to per-index slots freely;
// reductions must be order-independent (max/min/sum into per-chunk slots).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace coarse

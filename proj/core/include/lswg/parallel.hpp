#pragma once

#include <functional>

namespace lswg {

/// Worker count from LSWG_NUM_THREADS, defaulting to the hardware concurrency.
int worker_count();

/// Splits [0, n) into contiguous chunks, one per worker. Each index must be
/// written by exactly one chunk; results are then independent of the worker count.
void parallel_for(int n, const std::function<void(int, int)>& body, int workers = 0);

}  // namespace lswg

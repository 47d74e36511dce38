#pragma once

#include <cstddef>
#include <functional>

namespace imex {

/// Worker count: hardware concurrency, capped by IMEX_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, n). Each index is handled exactly once, so
/// results written to per-index slots are independent of thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace imex

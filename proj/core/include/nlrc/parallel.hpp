#pragma once

#include <cstddef>
#include <functional>

namespace nlrc {

/// Worker count from NLRC_JOBS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned default_worker_count();

/// Calls fn(i) for i in [0, n) on up to `jobs` threads (0 = default). Each
/// index runs exactly once; the first exception thrown by any task is
/// rethrown after all workers have joined.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace nlrc

#pragma once

#include <cstddef>
#include <functional>

namespace loam {

/// Worker count used when a caller does not pass one: the LOAM_THREADS
/// environment variable when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int default_thread_count();

/// Runs fn over [0, count) split into one contiguous chunk per worker.
/// Chunk boundaries depend only on count and the worker count, and callers
/// index their outputs by item, so results never depend on scheduling.
/// The first exception thrown by any worker is rethrown after all join.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t begin, std::size_t end, int worker)>& fn);

}  // namespace loam

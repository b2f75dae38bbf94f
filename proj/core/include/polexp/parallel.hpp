#pragma once

#include <cstddef>
#include <functional>

namespace polexp {

/// Number of worker threads used by parallel loops. Reads the POLEXP_THREADS
/// environment variable once; defaults to the hardware concurrency.
std::size_t worker_count();

/// Runs fn(i) for i in [0, count). Work items must be independent; each item
/// writes only to its own slot, so results are deterministic regardless of
/// scheduling. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace polexp

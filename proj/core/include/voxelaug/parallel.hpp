#pragma once

#include <cstddef>
#include <functional>

namespace voxelaug {

/// Upper bound on worker threads: VOXELAUG_THREADS when set, otherwise the
/// number of logical cores (at least 1). Throws ArgumentError when the
/// variable is set but is not a positive integer.
int worker_cap();

/// `requested` clamped to worker_cap(); requested <= 0 means "use the cap".
int resolve_workers(int requested);

/// Calls fn(i) for i in [0, n) on up to `workers` threads. Rethrows the first
/// exception after all threads have joined.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace voxelaug

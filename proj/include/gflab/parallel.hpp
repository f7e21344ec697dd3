#pragma once

#include <cstddef>
#include <functional>

namespace gflab {

// Worker count: GFLAB_THREADS if set (clamped to >= 1), otherwise the
// hardware concurrency. Read once per process.
int thread_budget();

// Runs fn(i) for i in [0, n). Work is split into contiguous ranges, one per
// worker; fn must only write to state owned by index i. Because results are
// addressed by index and reductions happen serially in the caller, the
// outcome is identical for any thread count. Exceptions are rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace gflab

#pragma once

#include <cstddef>
#include <functional>

namespace hilfer {

// Runs fn(i) for i in [0, count). Workers are capped by the
// HILFER_BVP_THREADS environment variable (default: hardware concurrency).
// Iterations are partitioned into fixed contiguous chunks, so results are
// independent of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace hilfer

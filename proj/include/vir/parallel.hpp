#pragma once

#include <cstddef>
#include <functional>

namespace vir {

// Worker count from VIRASORO_THREADS (default 1, invalid values rejected).
int thread_count();
// Runs body(i) for i in [0, n) on up to thread_count() workers. Each index is
// processed exactly once; callers write results by index for determinism.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads = 0);

} // namespace vir

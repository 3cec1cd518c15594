#pragma once

#include <functional>

namespace hardy {

// Worker cap: min(hardware_concurrency, HARDY_LAB_THREADS when set), at least 1.
int thread_count();

// Runs fn(i) for i in [0, n) across the worker pool.  Results must be written
// to disjoint slots; reductions happen on the caller's side so that output is
// independent of scheduling.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace hardy

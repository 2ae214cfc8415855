#pragma once

#include <functional>

namespace cavitysim {

/// Worker count for sweep-point dispatch (1 = serial). Set once at startup.
void set_worker_threads(int n);
int worker_threads();

/// Runs fn(i) for i in [0, count) on the worker pool. Iterations must be
/// independent; results are owned per-index so merging is deterministic.
void parallel_for(int count, const std::function<void(int)>& fn);

} // namespace cavitysim

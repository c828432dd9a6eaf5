#pragma once

#include <cstddef>
#include <functional>

namespace kmw {

// Worker count: an explicit override if set, else the KMW_THREADS environment
// variable, else the hardware concurrency. Always at least 1.
int thread_count();
void set_thread_count(int n);

// Calls body(i) for every i in [0, n). Iterations are distributed over
// thread_count() workers; callers must write results into per-index slots so
// that the outcome does not depend on scheduling.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

}  // namespace kmw

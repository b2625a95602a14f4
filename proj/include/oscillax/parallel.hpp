#pragma once

#include <cstddef>
#include <functional>

namespace oscillax {

// Worker count: OSCILLAX_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n). Each index is processed exactly once; callers
// write results by index so output order never depends on scheduling.
// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace oscillax

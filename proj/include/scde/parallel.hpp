#pragma once

#include <functional>

namespace scde {

// Worker count from the SCDE_WORKERS environment variable, falling back to
// the hardware concurrency; always at least 1.
int default_worker_count();

// Run fn(0), ..., fn(count-1) on up to `workers` threads (0 means the
// default count). Indices are claimed dynamically; the first exception is
// rethrown after all workers stop.
void parallel_for(int count, const std::function<void(int)>& fn, int workers = 0);

}  // namespace scde

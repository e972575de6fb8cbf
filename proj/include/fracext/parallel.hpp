#pragma once

#include <cstdint>
#include <functional>

namespace fracext {

// Process-wide cap on worker threads (CLI --threads). Defaults to the
// hardware concurrency.
int max_threads();
void set_max_threads(int n);

// Runs fn(0..n_items-1), work-stolen over an atomic counter. Results must be
// written to per-item slots; callers combine them in a fixed order, so the
// outcome never depends on the thread schedule.
void parallel_for(std::int64_t n_items, const std::function<void(std::int64_t)>& fn);

}  // namespace fracext

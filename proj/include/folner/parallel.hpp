#pragma once

#include <cstddef>
#include <functional>

namespace folner {

/// Worker cap: FOLNER_LAB_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
std::size_t thread_cap();

/// Runs body(i) for i in [0, count) on up to thread_cap() threads. Results
/// must be written to per-index slots; the first exception is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace folner

#pragma once

#include <cstddef>
#include <functional>

namespace sldp {

/// Worker count: SCHMIDT_LDP_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least one).
unsigned worker_count();

/// Calls body(i) for i in [0, n) on up to worker_count() threads. Results
/// must be written to per-index slots so the outcome is schedule-independent.
/// The first exception thrown by any body is rethrown after all workers join.
/// Calls made from inside a body run serially on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sldp

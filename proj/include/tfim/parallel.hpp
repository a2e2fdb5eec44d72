#pragma once

#include <cstddef>
#include <functional>

namespace tfim {

/// Worker count: TFIM_THREADS if set and positive, else hardware concurrency (at least 1).
unsigned default_threads();

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index runs
/// exactly once; the first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

} // namespace tfim

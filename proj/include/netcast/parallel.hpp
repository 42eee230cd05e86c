#pragma once

#include <cstddef>
#include <functional>

namespace netcast {

/// Worker count: NETCAST_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned default_threads();

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = default_threads()).
///
/// Indices are handed out in contiguous blocks; callers write results into
/// per-index slots so the outcome does not depend on scheduling. The first
/// exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

} // namespace netcast

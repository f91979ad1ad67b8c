#pragma once

#include <cstddef>
#include <functional>

namespace polyproj {

/// Worker count for the parallel phase: POLYPROJ_THREADS when set to a
/// positive integer, otherwise std::thread::hardware_concurrency() (at least 1).
unsigned default_threads();

/// Calls body(i) for i in [0, count). With threads > 1 the indices are split
/// across that many workers; the first exception thrown by any body is
/// rethrown after all workers join. Callers write into per-index slots so the
/// result does not depend on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace polyproj

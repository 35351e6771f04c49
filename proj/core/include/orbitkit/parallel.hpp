#pragma once

#include <cstddef>
#include <functional>

namespace orbitkit {

/// Worker count: ORBITKIT_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_count();

/// Calls body(i) for i in [0, n). Work is split across thread_count()
/// threads; callers write results into slot i so the output order does not
/// depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace orbitkit

#pragma once

#include <cstddef>
#include <functional>

namespace wigner {

/// Worker count used by parallel_for; 0 selects the number of logical cores.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for i in [0, count). Every index is processed exactly once,
/// so results written to per-index slots do not depend on the thread count.
/// The first exception thrown by any worker is rethrown to the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace wigner

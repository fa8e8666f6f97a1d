#pragma once

#include <cstddef>
#include <functional>

namespace jumpimpact {

/// Name of the environment variable that caps worker threads.
inline constexpr const char* kThreadsEnvVar = "JUMPIMPACT_THREADS";

/// Worker count: JUMPIMPACT_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
[[nodiscard]] std::size_t worker_count();

/// Calls body(begin, end) on contiguous index chunks covering [0, n).
/// Chunks are disjoint, so bodies that only write their own indices need no
/// synchronization and the result does not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace jumpimpact

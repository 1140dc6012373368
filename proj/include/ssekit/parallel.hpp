#pragma once

#include <cstddef>
#include <functional>

namespace ssekit {

/// Worker count for internal parallelism: `SSEKIT_THREADS` when set to a
/// positive integer, otherwise the hardware concurrency. Read on every call.
std::size_t thread_count();

/// Runs body(i) for every i in [0, n), spread over at most thread_count()
/// threads. Callers write results into slot i, so output order never depends
/// on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ssekit

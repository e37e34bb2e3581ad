#pragma once

#include <cstddef>
#include <functional>

namespace blowup {

/// Worker count: `requested` if positive, otherwise the hardware concurrency.
/// The environment variable BLOWUP_THREADS, when set to a positive integer,
/// caps the result.
int thread_count(int requested = 0);

/// Runs body(i) for i in [0, count) on up to thread_count(threads) workers.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  int threads = 0);

}  // namespace blowup

#pragma once

#include <cstddef>
#include <functional>

namespace pinning {

/// Number of workers parallel_for will use: the PINNING_THREADS environment
/// variable when set to a positive value, hardware concurrency otherwise
/// (a value of 0 also means auto). Always at least 1.
int worker_count();

/// Runs fn(0) .. fn(count - 1), distributing indices over worker_count()
/// threads via an atomic cursor. Each index runs exactly once; callers keep
/// determinism by writing results into preallocated per-index slots, so the
/// outcome cannot depend on scheduling. The first exception thrown by any
/// worker is rethrown on the calling thread after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace pinning

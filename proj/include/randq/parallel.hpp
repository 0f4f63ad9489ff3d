#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace randq {

/// Worker count from RANDQ_WORKERS, or 1 when unset or invalid.
int worker_count_from_env();

/// Calls task(i) for i in [0, count) on up to `workers` threads. Tasks own
/// their inputs, so results do not depend on the schedule. The first
/// exception thrown by a task is rethrown after all threads join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task);

} // namespace randq

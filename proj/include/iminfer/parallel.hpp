#pragma once

#include <cstddef>
#include <functional>

namespace iminfer {

/// Worker cap from IM_INFER_THREADS (default: hardware concurrency, >= 1).
std::size_t worker_count();

/// Runs task(i) for i in [0, tasks) on up to worker_count() threads. Callers
/// write results into per-task slots, so output never depends on scheduling.
/// If tasks throw, the exception from the lowest task index is rethrown.
void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& task);

}  // namespace iminfer

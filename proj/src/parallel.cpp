#include "iminfer/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace iminfer {

std::size_t worker_count() {
  if (const char* env = std::getenv("IM_INFER_THREADS"); env != nullptr && *env != '\0') {
    try {
      const long requested = std::stol(env);
      if (requested >= 1) return static_cast<std::size_t>(requested);
    } catch (const std::exception&) {
      // fall through to the default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {
// Nested calls run inline so worker counts do not multiply.
thread_local bool in_parallel_region = false;
}  // namespace

void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = in_parallel_region ? 1 : std::min(worker_count(), tasks);
  std::mutex failure_mutex;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;

  auto run_one = [&](std::size_t i) {
    try {
      task(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (i < failed_index) {
        failed_index = i;
        failure = std::current_exception();
      }
    }
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        in_parallel_region = true;
        for (std::size_t i = next++; i < tasks; i = next++) run_one(i);
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace iminfer

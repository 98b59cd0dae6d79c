#include "hcurve/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hcurve {

namespace {
std::atomic<std::size_t> g_max_jobs{0};
thread_local bool t_inside_worker = false;
}  // namespace

void set_max_jobs(std::size_t jobs) { g_max_jobs.store(jobs); }

std::size_t max_jobs() {
  std::size_t j = g_max_jobs.load();
  if (j == 0) j = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  return j;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::size_t workers = std::min(max_jobs(), count);
  // Nested loops run inline; only the outermost level fans out.
  if (workers <= 1 || t_inside_worker) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto run = [&] {
    t_inside_worker = true;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(count);
      }
    }
    t_inside_worker = false;
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hcurve

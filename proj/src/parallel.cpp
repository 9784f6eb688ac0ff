#include "scde/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace scde {

int default_worker_count() {
  if (const char* env = std::getenv("SCDE_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int count, const std::function<void(int)>& fn, int workers) {
  if (workers <= 0) workers = default_worker_count();
  if (workers > count) workers = count;
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<int> next{0};
  std::atomic<bool> stop{false};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto body = [&]() {
    while (!stop.load(std::memory_order_relaxed)) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        stop.store(true);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<unsigned>(workers));
  for (int i = 0; i < workers; ++i) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace scde

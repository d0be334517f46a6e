#include "fenchel/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fenchel {

namespace {
std::atomic<int> g_threads{1};
thread_local bool t_inside_worker = false;
}

void set_max_threads(int n) { g_threads = std::max(1, n); }
int max_threads() { return g_threads; }

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  const size_t workers = t_inside_worker ? 1 : std::min(n, static_cast<size_t>(g_threads.load()));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      t_inside_worker = true;
      for (size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace fenchel

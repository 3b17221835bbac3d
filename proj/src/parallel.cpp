#include "shearbd/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shearbd {

namespace {
std::atomic<unsigned> g_limit{0};
thread_local bool t_inside = false;  // nested loops run inline
}

void set_thread_limit(unsigned threads) { g_limit = threads; }

unsigned thread_limit() {
  unsigned t = g_limit.load();
  if (t == 0) t = std::thread::hardware_concurrency();
  return t == 0 ? 1 : t;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  unsigned workers = thread_limit();
  if (workers > count) workers = static_cast<unsigned>(count);
  if (workers <= 1 || t_inside) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    bool outer = t_inside;
    t_inside = true;
    struct Reset {
      bool v;
      ~Reset() { t_inside = v; }
    } reset{outer};
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace shearbd

#include "kmw/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace kmw {
namespace {

std::atomic<int> g_override{0};
thread_local bool t_inside = false;

struct InsideGuard {
  bool saved;
  InsideGuard() : saved(t_inside) { t_inside = true; }
  ~InsideGuard() { t_inside = saved; }
};

}  // namespace

int thread_count() {
  int o = g_override.load();
  if (o > 0) return o;
  if (const char* env = std::getenv("KMW_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_thread_count(int n) { g_override.store(n > 0 ? n : 0); }

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
  size_t workers = t_inside ? 1 : std::min<size_t>(static_cast<size_t>(thread_count()), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    InsideGuard guard;
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace kmw

#include "sdc/core/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sdc {
namespace {

std::atomic<int> g_thread_count{0};

}  // namespace

void set_thread_count(int count) { g_thread_count = std::max(0, count); }

int thread_count() {
  const int configured = g_thread_count.load();
  if (configured > 0) return configured;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int begin, int end, const std::function<void(int)>& body) {
  const int total = end - begin;
  if (total <= 0) return;
  const int workers = std::min(thread_count(), total);
  if (workers == 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      const int lo = begin + static_cast<int>(static_cast<long>(total) * w / workers);
      const int hi = begin + static_cast<int>(static_cast<long>(total) * (w + 1) / workers);
      pool.emplace_back([&, lo, hi] {
        try {
          for (int i = lo; i < hi; ++i) body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sdc

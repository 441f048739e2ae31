#include "frobscan/exec.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace frobscan {

unsigned ExecPolicy::resolved_threads() const {
  if (threads > 0) return threads;
  if (const char* env = std::getenv("FROBSCAN_THREADS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

ExecPolicy& global_policy() {
  static ExecPolicy policy;
  return policy;
}

void run_blocks(uint64_t nblocks, unsigned threads,
                const std::function<void(uint64_t)>& fn) {
  if (nblocks == 0) return;
  unsigned workers = threads > 0 ? threads : 1;
  if (workers > nblocks) workers = static_cast<unsigned>(nblocks);
  if (workers <= 1) {
    for (uint64_t b = 0; b < nblocks; ++b) fn(b);
    return;
  }
  std::atomic<uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        uint64_t b = next.fetch_add(1);
        if (b >= nblocks) return;
        try {
          fn(b);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace frobscan

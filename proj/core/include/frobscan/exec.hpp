#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace frobscan {

// Parallelism budget and work cap shared by the expensive operations.
// Results never depend on `threads`: work is split into fixed blocks and
// block results are combined in index order.
struct ExecPolicy {
  unsigned threads = 0;                    // 0 = FROBSCAN_THREADS env or hardware
  uint64_t work_cap = 1'000'000'000;       // evaluated tuples per (variety, p) call

  unsigned resolved_threads() const;
};

ExecPolicy& global_policy();

// Runs fn(block_index) for every block in [0, nblocks) on up to `threads`
// workers. The caller combines the per-block results in index order.
void run_blocks(uint64_t nblocks, unsigned threads,
                const std::function<void(uint64_t)>& fn);

template <typename R, typename Fn>
std::vector<R> map_blocks(uint64_t nblocks, unsigned threads, const Fn& fn) {
  std::vector<R> out(nblocks);
  run_blocks(nblocks, threads, [&](uint64_t b) { out[b] = fn(b); });
  return out;
}

}  // namespace frobscan

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobscan/counting.hpp"
#include "frobscan/exec.hpp"

namespace frobscan {

// Streaming tally of a prime-indexed predicate. Densities are relative to the
// good primes actually scanned; the finite bad set cannot change the limit.
struct DensityReport {
  std::string predicate;
  uint64_t x_max = 0;
  uint64_t hits = 0;
  uint64_t scanned = 0;
  std::vector<uint64_t> bad_skipped;
  std::vector<std::pair<uint64_t, double>> checkpoints;  // (X, density at X)
  bool truncated = false;  // work cap hit; x_max is the last completed prime bound

  double density() const {
    return scanned == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(scanned);
  }

  std::string to_json_string(int indent = -1) const;
  static DensityReport from_json_string(const std::string& text);
};

// Density of {good p <= X, p ∤ m : N_V(p) ≡ a (mod m)}. Primes dividing m are
// skipped entirely so that for fixed m the densities over a = 0..m-1 always
// partition 1. Checkpoints at every decade from 100 and at the scan end.
// Pass a previous report to extend it to a larger X without recounting.
DensityReport scan_congruence_density(const Variety& v, int64_t a, uint64_t m, uint64_t x,
                                      const ExecPolicy& policy = global_policy(),
                                      const DensityReport* resume_from = nullptr);

// Density of {good p <= X : p ∤ (N_V(p) - a_i) for every i}.
DensityReport scan_nondivisibility(const Variety& v, const std::vector<int64_t>& a_list,
                                   uint64_t x, const ExecPolicy& policy = global_policy(),
                                   const DensityReport* resume_from = nullptr);

// Smallest good prime p <= bound with p ∤ prod_i (N_V(p) - a_i), if any.
std::optional<uint64_t> least_good_prime_nondiv(const Variety& v,
                                                const std::vector<int64_t>& a_list, uint64_t bound,
                                                const ExecPolicy& policy = global_policy());

}  // namespace frobscan

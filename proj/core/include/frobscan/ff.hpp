#pragma once

#include <cstdint>
#include <vector>

#include "frobscan/bigint.hpp"
#include "frobscan/error.hpp"

namespace frobscan {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);

// Legendre symbol via Euler's criterion: 0 if p | a, +1 for a non-zero
// square mod p, -1 otherwise. Requires p an odd prime >= 3.
int legendre(int64_t a, uint64_t p);
int legendre(const BigInt& a, uint64_t p);

// Deterministic Miller-Rabin, valid for n < 3.3e14.
bool is_prime_u64(uint64_t n);

// chi[a] = legendre(a, p) for all residues a, built in O(p) by marking the
// squares. The hot counting loops index this instead of exponentiating.
class SquareTable {
 public:
  static constexpr uint64_t kDefaultCap = uint64_t(1) << 26;

  explicit SquareTable(uint64_t p, uint64_t cap = kDefaultCap);

  uint64_t p() const { return p_; }
  int chi(uint64_t a) const { return chi_[a]; }
  const std::vector<int8_t>& data() const { return chi_; }

 private:
  uint64_t p_;
  std::vector<int8_t> chi_;
};

// chi lookups that fall back to the scalar path above the table cap.
class ChiEvaluator {
 public:
  explicit ChiEvaluator(uint64_t p, uint64_t cap = SquareTable::kDefaultCap);
  int operator()(uint64_t a) const {
    return table_.empty() ? legendre(static_cast<int64_t>(a), p_) : table_[a];
  }
  uint64_t p() const { return p_; }

 private:
  uint64_t p_;
  std::vector<int8_t> table_;
};

}  // namespace frobscan

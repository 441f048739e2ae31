#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace frobscan {

// Arbitrary-precision integers and rationals. GMP does the heavy lifting;
// everything mod-p sized lives in plain uint64_t.
using BigInt = mpz_class;
using BigRat = mpq_class;

// Non-negative remainder of a mod m, also for negative a.
inline uint64_t mod_u64(const BigInt& a, uint64_t m) {
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

inline BigInt pow_bigint(const BigInt& base, uint32_t e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline std::string to_string(const BigInt& a) { return a.get_str(); }
inline std::string to_string(const BigRat& a) { return a.get_str(); }

}  // namespace frobscan

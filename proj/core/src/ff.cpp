#include "frobscan/ff.hpp"

namespace frobscan {

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

static void require_odd_prime_modulus(uint64_t p) {
  if (p < 3 || p % 2 == 0)
    throw Error(ErrorCode::Domain,
                "legendre: modulus must be an odd prime >= 3, got " + std::to_string(p));
}

int legendre(int64_t a, uint64_t p) {
  require_odd_prime_modulus(p);
  int64_t sp = static_cast<int64_t>(p);
  uint64_t r = static_cast<uint64_t>(((a % sp) + sp) % sp);
  if (r == 0) return 0;
  uint64_t e = powmod(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

int legendre(const BigInt& a, uint64_t p) {
  require_odd_prime_modulus(p);
  uint64_t r = mod_u64(a, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // Bases 2..17 are a deterministic witness set below 3.4e14.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

SquareTable::SquareTable(uint64_t p, uint64_t cap) : p_(p) {
  require_odd_prime_modulus(p);
  if (p > cap)
    throw Error(ErrorCode::Domain, "square table: p=" + std::to_string(p) +
                                       " exceeds the memory cap " + std::to_string(cap));
  chi_.assign(p, -1);
  chi_[0] = 0;
  for (uint64_t a = 1; a <= (p - 1) / 2; ++a) chi_[mulmod(a, a, p)] = 1;
}

ChiEvaluator::ChiEvaluator(uint64_t p, uint64_t cap) : p_(p) {
  require_odd_prime_modulus(p);
  if (p <= cap) {
    SquareTable t(p, cap);
    table_ = t.data();
  }
}

}  // namespace frobscan

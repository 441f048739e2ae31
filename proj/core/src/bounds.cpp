#include "frobscan/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "frobscan/error.hpp"
#include "frobscan/ff.hpp"
#include "frobscan/primes.hpp"

namespace frobscan {

int64_t sieve_gamma(int64_t g) {
  if (g < 1) throw Error(ErrorCode::Domain, "gamma requires g >= 1");
  return 4 * g * g + 2 * g + 4;
}

void SieveParams::validate() const {
  if (g < 1) throw Error(ErrorCode::Domain, "sieve params: g >= 1 required");
  if (n < 1) throw Error(ErrorCode::Domain, "sieve params: n >= 1 required");
  if (k <= 0.0) throw Error(ErrorCode::Domain, "sieve params: K > 0 required");
  if (t < 2.0) throw Error(ErrorCode::Domain, "sieve params: T >= 2 required");
}

double q_bound(const SieveParams& params) {
  params.validate();
  const double gamma = static_cast<double>(sieve_gamma(params.g));
  const double x = 2.0 * params.k * std::log(params.t);
  if (x <= 1.0)
    throw Error(ErrorCode::Domain,
                "q_bound: 2K log T must exceed 1 (T too small for the given K)");
  const double outer_exp =
      (gamma / 2.0) * (1.0 - 2.0 / (gamma + 2.0 * static_cast<double>(params.n) - 2.0));
  return std::pow(x, gamma / 2.0) * std::pow(std::log(x), outer_exp);
}

std::optional<double> larger_sieve_bound(double q, double t,
                                         const std::map<uint64_t, double>& nu) {
  if (t <= 0.0) throw Error(ErrorCode::Domain, "larger sieve: T must be positive");
  double num = 0.0, den = 0.0;
  if (q >= 2.0) {
    for_each_prime(2, static_cast<uint64_t>(q), [&](uint64_t p) {
      auto it = nu.find(p);
      if (it == nu.end())
        throw Error(ErrorCode::Domain,
                    "larger sieve: nu is missing the prime " + std::to_string(p));
      if (it->second <= 0.0)
        throw Error(ErrorCode::Domain,
                    "larger sieve: nu(" + std::to_string(p) + ") must be positive");
      const double logp = std::log(static_cast<double>(p));
      num += logp;
      den += logp / it->second;
    });
  }
  den -= std::log(2.0 * t);
  if (den <= 0.0) return std::nullopt;
  return num / den;
}

BigRat delta_ell(uint64_t ell, int64_t g, int64_t n) {
  if (g < 1) throw Error(ErrorCode::Domain, "delta_ell requires g >= 1");
  if (n < 0) throw Error(ErrorCode::Domain, "delta_ell requires n >= 0");
  if (!is_prime_u64(ell)) throw Error(ErrorCode::Domain, "delta_ell: l must be prime");
  if (static_cast<int64_t>(ell) <= n)
    throw Error(ErrorCode::Domain, "delta_ell requires l > n");
  const uint32_t e = static_cast<uint32_t>(2 * g * g + g + 1);
  // (l-n)/l * (l/(l+1))^e = (l-n) l^(e-1) / (l+1)^e
  BigInt l(static_cast<unsigned long>(ell));
  BigInt num = BigInt(l - n) * pow_bigint(l, e - 1);
  BigInt den = pow_bigint(BigInt(l + 1), e);
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

uint64_t count_p_symplectic(uint64_t ell, int64_t g, int64_t p,
                            const std::vector<int64_t>& excluded_traces,
                            const ExecPolicy& policy) {
  if (g < 1) throw Error(ErrorCode::Domain, "count_p_symplectic requires g >= 1");
  if (!is_prime_u64(ell)) throw Error(ErrorCode::Domain, "count_p_symplectic: l must be prime");
  const int64_t sl = static_cast<int64_t>(ell);
  const uint64_t p_mod = static_cast<uint64_t>(((p % sl) + sl) % sl);
  if (p_mod == 0)
    throw Error(ErrorCode::Domain, "count_p_symplectic requires p coprime to l");
  const uint32_t deg = static_cast<uint32_t>(2 * g);

  uint64_t space = 1;
  for (uint32_t i = 0; i < deg; ++i) {
    if (space > policy.work_cap / ell)
      throw WorkCapError("p-symplectic enumeration", UINT64_MAX, policy.work_cap);
    space *= ell;
  }
  if (space > policy.work_cap)
    throw WorkCapError("p-symplectic enumeration", space, policy.work_cap);

  std::set<uint64_t> excluded;
  for (int64_t a : excluded_traces)
    excluded.insert(static_cast<uint64_t>(((a % sl) + sl) % sl));

  std::vector<uint64_t> ppow(deg + 1);
  ppow[0] = 1;
  for (uint32_t i = 1; i <= deg; ++i) ppow[i] = mulmod(ppow[i - 1], p_mod, ell);
  const uint64_t pg = ppow[deg / 2];

  // enumerate coefficient vectors (c_0, ..., c_{2g-1}), c_{2g} = 1;
  // blocks split on the leading free coefficient for determinism
  const uint64_t per_block = space / ell;
  auto parts = map_blocks<uint64_t>(ell, policy.resolved_threads(), [&](uint64_t lead) {
    std::vector<uint64_t> c(deg + 1);
    c[deg] = 1;
    c[deg - 1] = lead;
    uint64_t count = 0;
    for (uint64_t idx = 0; idx < per_block; ++idx) {
      uint64_t rest = idx;
      for (uint32_t i = 0; i + 1 < deg; ++i) {
        c[i] = rest % ell;
        rest /= ell;
      }
      // T^{2g} f(p/T) = p^g f(T): coefficientwise c_{2g-k} p^{2g-k} = p^g c_k
      bool ok = true;
      for (uint32_t k = 0; k <= deg && ok; ++k)
        ok = mulmod(c[deg - k], ppow[deg - k], ell) == mulmod(pg, c[k], ell);
      if (!ok) continue;
      if (!excluded.empty() && excluded.count(c[1])) continue;  // f'(0) = c_1
      ++count;
    }
    return count;
  });
  uint64_t total = 0;
  for (uint64_t part : parts) total += part;
  return total;
}

bool check_value1(const Value1Input& v) {
  if (v.b_minus >= v.b_plus)
    throw Error(ErrorCode::Domain, "value-at-1 check requires b- < b+");
  const int64_t lo = std::abs(v.m1 - v.b_minus);
  const int64_t hi = std::abs(v.m1 - v.b_plus);
  return std::max(lo, hi) >= v.b_plus - v.b_minus;
}

bool surface_value1(int64_t b1_y, int64_t b2_y, int64_t b2_c, int64_t chic_c, int64_t a) {
  if (b1_y < 0 || b2_y < 0 || b2_c < 0)
    throw Error(ErrorCode::Domain, "Betti numbers must be non-negative");
  Value1Input v;
  v.m1 = b2_y - b1_y + 1 - chic_c - a;
  v.b_minus = -b2_y - b2_c - 1;
  v.b_plus = b2_y + 1;
  return check_value1(v);
}

bool threefold_value1(int64_t b2_y, int64_t b0_s, int64_t b1_s, int64_t b2_s, int64_t a) {
  if (b2_y < 0 || b0_s < 0 || b1_s < 0 || b2_s < 0)
    throw Error(ErrorCode::Domain, "Betti numbers must be non-negative");
  Value1Input v;
  v.m1 = b2_y + 1 - b2_s + b1_s - b0_s - a;
  v.b_minus = -(b2_y + b2_s + 1);
  v.b_plus = b2_y + b2_s + 1;
  return check_value1(v);
}

}  // namespace frobscan

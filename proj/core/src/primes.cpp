#include "frobscan/primes.hpp"

#include <cmath>
#include <numeric>

#include "frobscan/error.hpp"
#include "frobscan/ff.hpp"

namespace frobscan {

namespace {

constexpr uint64_t kSieveLimit = uint64_t(1) << 40;
constexpr uint64_t kSegmentSize = uint64_t(1) << 20;
constexpr uint64_t kMillerRabinLimit = 330'000'000'000'000ull;  // deterministic below this

// odd primes <= sqrt_limit by a plain sieve
std::vector<uint64_t> base_primes(uint64_t sqrt_limit) {
  std::vector<uint8_t> is_prime(sqrt_limit + 1, 1);
  std::vector<uint64_t> out;
  for (uint64_t i = 2; i <= sqrt_limit; ++i) {
    if (!is_prime[i]) continue;
    if (i > 2) out.push_back(i);
    for (uint64_t j = i * i; j <= sqrt_limit; j += i) is_prime[j] = 0;
  }
  return out;
}

// primes in [lo, hi] with lo odd-aligned, using precomputed base primes
void sieve_segment(uint64_t lo, uint64_t hi, const std::vector<uint64_t>& base,
                   std::vector<uint64_t>& out) {
  const uint64_t n = hi - lo + 1;
  std::vector<uint8_t> composite(n, 0);
  for (uint64_t p : base) {
    if (p * p > hi) break;
    uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
    if (start % 2 == 0) start += p;  // only odd candidates are stored
    for (uint64_t j = start; j <= hi; j += 2 * p) composite[j - lo] = 1;
  }
  for (uint64_t v = lo % 2 == 0 ? lo + 1 : lo; v <= hi; v += 2)
    if (!composite[v - lo] && v >= 3) out.push_back(v);
}

}  // namespace

PrimeRange primes_up_to(uint64_t x, const ExecPolicy& policy) {
  if (x < 2) throw Error(ErrorCode::Domain, "primes_up_to requires x >= 2");
  if (x > kSieveLimit) throw Error(ErrorCode::Domain, "sieve limit 2^40 exceeded");
  const uint64_t sqrt_limit = static_cast<uint64_t>(std::sqrt(static_cast<double>(x))) + 1;
  const auto base = base_primes(sqrt_limit);

  const uint64_t nseg = (x - 2) / kSegmentSize + 1;
  auto segments = map_blocks<std::vector<uint64_t>>(
      nseg, policy.resolved_threads(), [&](uint64_t s) {
        uint64_t lo = 2 + s * kSegmentSize;
        uint64_t hi = std::min(x, lo + kSegmentSize - 1);
        std::vector<uint64_t> seg;
        sieve_segment(lo, hi, base, seg);
        return seg;
      });

  PrimeRange r;
  r.limit = x;
  r.primes.push_back(2);
  for (const auto& seg : segments) r.primes.insert(r.primes.end(), seg.begin(), seg.end());
  return r;
}

void for_each_prime(uint64_t lo, uint64_t hi, const std::function<void(uint64_t)>& fn) {
  if (hi < 2 || hi < lo) return;
  const uint64_t sqrt_limit = static_cast<uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  const auto base = base_primes(sqrt_limit);
  if (lo <= 2) fn(2);
  uint64_t cursor = std::max<uint64_t>(lo, 3);
  while (cursor <= hi) {
    uint64_t seg_hi = std::min(hi, cursor + kSegmentSize - 1);
    std::vector<uint64_t> seg;
    sieve_segment(cursor, seg_hi, base, seg);
    for (uint64_t p : seg) fn(p);
    cursor = seg_hi + 1;
  }
}

uint64_t least_prime_in_ap(uint64_t q, uint64_t a) {
  if (q < 2) throw Error(ErrorCode::Domain, "least_prime_in_ap requires q >= 2");
  if (std::gcd(q, a) != 1)
    throw Error(ErrorCode::Domain, "least_prime_in_ap requires gcd(a, q) = 1");
  uint64_t r = a % q;
  for (uint64_t candidate = r == 0 ? q : r;; candidate += q) {
    if (candidate >= kMillerRabinLimit)
      throw Error(ErrorCode::Domain, "least_prime_in_ap: beyond deterministic primality range");
    if (candidate >= 2 && is_prime_u64(candidate)) return candidate;
  }
}

namespace {

// Neumaier-compensated accumulation of fn over primes in fixed segments;
// segment partials are combined in index order.
double compensated_prime_sum(uint64_t limit, const ExecPolicy& policy,
                             const std::function<double(uint64_t)>& fn) {
  const uint64_t sqrt_limit = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  const auto base = base_primes(sqrt_limit);
  const uint64_t nseg = (limit - 2) / kSegmentSize + 1;

  auto partials = map_blocks<double>(nseg, policy.resolved_threads(), [&](uint64_t s) {
    uint64_t lo = 2 + s * kSegmentSize;
    uint64_t hi = std::min(limit, lo + kSegmentSize - 1);
    std::vector<uint64_t> seg;
    if (lo <= 2) seg.push_back(2);
    sieve_segment(lo, hi, base, seg);
    double sum = 0.0, comp = 0.0;
    for (uint64_t p : seg) {
      double term = fn(p);
      double t = sum + term;
      comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    }
    return sum + comp;
  });

  double sum = 0.0, comp = 0.0;
  for (double part : partials) {
    double t = sum + part;
    comp += std::abs(sum) >= std::abs(part) ? (sum - t) + part : (part - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

double prime_power_log_sum(uint64_t limit, double alpha, double beta, const ExecPolicy& policy) {
  if (limit < 2) throw Error(ErrorCode::Domain, "prime_power_log_sum requires limit >= 2");
  if (limit > kSieveLimit) throw Error(ErrorCode::Domain, "sieve limit 2^40 exceeded");
  return compensated_prime_sum(limit, policy, [&](uint64_t p) {
    double v = static_cast<double>(p);
    double term = 1.0;
    if (alpha != 0.0) term *= std::pow(v, alpha);
    if (beta != 0.0) term *= std::pow(std::log(v), beta);
    return term;
  });
}

double abel_ratio(uint64_t limit, double alpha, double beta, const ExecPolicy& policy) {
  if (alpha <= -1.0) throw Error(ErrorCode::Domain, "abel_ratio requires alpha > -1");
  if (limit < 100) throw Error(ErrorCode::Domain, "abel_ratio requires limit >= 100");
  const double sum = prime_power_log_sum(limit, alpha, beta, policy);
  const double l = static_cast<double>(limit);
  const double lead = std::pow(l, alpha + 1.0) / (alpha + 1.0) * std::pow(std::log(l), beta - 1.0);
  return sum / lead;
}

}  // namespace frobscan

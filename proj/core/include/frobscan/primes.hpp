#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "frobscan/exec.hpp"

namespace frobscan {

struct PrimeRange {
  uint64_t limit = 0;
  std::vector<uint64_t> primes;  // all primes <= limit, ascending
};

// Segmented sieve of Eratosthenes. Segments are sieved in parallel and
// concatenated in index order, so the result never depends on thread count.
PrimeRange primes_up_to(uint64_t x, const ExecPolicy& policy = global_policy());

// Streams primes in [lo, hi] ascending without materialising the whole list.
void for_each_prime(uint64_t lo, uint64_t hi, const std::function<void(uint64_t)>& fn);

// Smallest prime p = a (mod q); requires gcd(a, q) = 1.
uint64_t least_prime_in_ap(uint64_t q, uint64_t a);

// sum over primes p <= limit of p^alpha * log(p)^beta, accumulated in blocked
// compensated summation (reproducible to full precision across thread counts).
double prime_power_log_sum(uint64_t limit, double alpha, double beta,
                           const ExecPolicy& policy = global_policy());

// prime_power_log_sum normalised by its leading asymptotic term
// L^(alpha+1)/(alpha+1) * log(L)^(beta-1); tends to 1 as L grows.
// Requires alpha > -1 and L >= 100.
double abel_ratio(uint64_t limit, double alpha, double beta,
                  const ExecPolicy& policy = global_policy());

}  // namespace frobscan

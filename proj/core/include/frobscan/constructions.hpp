#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobscan/counting.hpp"
#include "frobscan/exec.hpp"
#include "frobscan/poly.hpp"

namespace frobscan {

// The curve y^2 = x^q + 1 (q an odd prime), bad set {2, q}. For primes
// p != 1 (mod q) the map x -> x^q + 1 is a bijection, so N(p) = p; the first
// prime that can break N = p is the least prime = 1 (mod q).
Variety build_cq(uint64_t q);

struct CqReport {
  uint64_t q = 0;
  uint64_t p0 = 0;        // least prime = 1 (mod q)
  uint64_t n_at_p0 = 0;   // affine count at p0
  uint64_t checked = 0;   // good primes below p0 verified to have N = p
  bool all_below_match = false;
  std::optional<uint64_t> first_failure;
};

// Counts N(p) for every good p < p0 and asserts N = p there; reports N(p0).
CqReport verify_cq(uint64_t q, const ExecPolicy& policy = global_policy());

// Monic degree-5 polynomial f over F_p, squarefree mod p, whose curve
// y^2 = f(x) has exactly p affine points (trace zero). Seeded random search
// in deterministic batches, falling back to lexicographic enumeration; the
// target always exists, so the search terminates.
UniPoly search_genus2_anomalous(uint64_t p, uint64_t seed,
                                uint64_t max_attempts = 4'000'000,
                                const ExecPolicy& policy = global_policy());

// Coefficient-wise Chinese-remainder lift of monic degree-5 reductions, with
// symmetric representatives in (-M/2, M/2].
UniPoly crt_combine(const std::vector<std::pair<uint64_t, UniPoly>>& pairs);

struct Genus2PairReport {
  uint64_t p_max = 0;
  uint64_t checked = 0;  // good odd primes below 401
  bool all_below_401_pass = false;
  std::vector<uint64_t> failures_below_401;        // good odd primes with both counts off
  std::optional<uint64_t> first_both_fail;         // first p >= 401 with both off, if <= p_max
};

// For the fixture pair C1: y^2 = x^5+5x^3+5x, C2: y^2 = x^5+x, checks that for
// every good odd p < 401 at least one curve has N(p) = p.
Genus2PairReport verify_genus2_pair(uint64_t p_max, const ExecPolicy& policy = global_policy());

// Affine elliptic surface y^2 = a x^3 + b(t) x^2 + c(t) x + d(t) with a != 0
// and deg b <= 1, deg c <= 3, deg d <= 5. Within these degree bounds
// p | N_S(p) for every odd prime p.
class EllipticSurface {
 public:
  EllipticSurface(BigInt a, UniPoly b, UniPoly c, UniPoly d);

  const BigInt& a() const { return a_; }
  const UniPoly& b() const { return b_; }
  const UniPoly& c() const { return c_; }
  const UniPoly& d() const { return d_; }

  // N_S(p) = sum over (x,t) of (1 + chi_p(f(x,t)))
  uint64_t count(uint64_t p, const ExecPolicy& policy = global_policy()) const;

  Variety to_variety() const;  // y^2 - f(x,t) over vars (x, t, y)

  static EllipticSurface from_text(std::string_view text);  // a:/b:/c:/d: lines
  static EllipticSurface from_file(const std::string& path);

 private:
  BigInt a_;
  UniPoly b_, c_, d_;
};

struct DivisibilityReport {
  uint64_t p_max = 0;
  uint64_t checked = 0;
  bool all_divisible = false;
  std::vector<uint64_t> violations;  // would falsify the statement; always empty
};

// Verifies p | N_S(p) for every odd prime p <= p_max.
DivisibilityReport check_surface_divisibility(const EllipticSurface& s, uint64_t p_max,
                                              const ExecPolicy& policy = global_policy());

// sum over x in F_p of x^c, reduced mod p: zero exactly when (p-1) ∤ c,
// and p-1 otherwise.
uint64_t hua_sum(uint64_t p, uint64_t c);

}  // namespace frobscan

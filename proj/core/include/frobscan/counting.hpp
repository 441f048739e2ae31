#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "frobscan/exec.hpp"
#include "frobscan/ff.hpp"
#include "frobscan/poly.hpp"

namespace frobscan {

// A system of integer polynomial equations plus its operational bad-prime
// data: an explicit finite set and/or a univariate generator whose
// 2 * lc * disc defines further bad primes. p = 2 is always bad.
struct Variety {
  std::vector<std::string> vars;
  std::vector<IntPoly> equations;
  std::set<uint64_t> explicit_bad;
  std::optional<UniPoly> disc_generator;

  // Text format, one directive per line, '#' comments:
  //   vars: x y t
  //   eq: y^2 - x^3 - x
  //   bad: 2 3 5
  //   disc_of: x^3 + x
  static Variety from_text(std::string_view text);
  static Variety from_file(const std::string& path);

  void validate() const;  // throws on undeclared variables or a degenerate generator
};

// Bad-prime membership, with the exact generator modulus cached.
class BadPrimeRule {
 public:
  BadPrimeRule() = default;
  explicit BadPrimeRule(const Variety& v);
  bool is_bad(uint64_t p) const;

 private:
  std::set<uint64_t> explicit_bad_;
  BigInt generator_modulus_ = 0;  // |2 * lc * disc| of the generator, 0 if none
};

bool is_bad_prime(const Variety& v, uint64_t p);

struct PointCountRecord {
  uint64_t p = 0;
  uint64_t n_affine = 0;
  uint64_t n_mod_p = 0;
  std::optional<int64_t> trace;  // p - n_affine, odd-degree hyperelliptic models only
  bool good_reduction = false;
};

// Result of eliminating square-only variables: each chi factor g came from an
// equation y^2 = g and contributes (1 + chi_p(g)) per base point; the
// remaining equations are counted fiberwise.
struct CharsumPlan {
  std::vector<std::string> vars;      // variables still enumerated
  std::vector<IntPoly> chi_factors;   // over `vars`
  std::vector<IntPoly> equations;     // over `vars`
  std::size_t eliminated = 0;
};

// A variable is eliminable when it occurs in exactly one equation, only in a
// single term c*y^2 with c = +-1. Returns nullopt when nothing is eliminable.
std::optional<CharsumPlan> plan_charsum(const Variety& v);

// Exact number of solutions in [0,p)^n, by enumeration with subtree pruning.
uint64_t count_affine_bruteforce(const Variety& v, uint64_t p,
                                 const ExecPolicy& policy = global_policy());

// Same value through the char-sum plan; requires odd p and an eliminable
// structure (throws ErrorCode::NoPlan otherwise).
uint64_t count_affine_charsum(const Variety& v, uint64_t p,
                              const ExecPolicy& policy = global_policy());

// Affine count of y^2 = h(x) for odd p and odd deg h >= 3, with the
// Frobenius trace p - n_affine of the one-point-at-infinity projective model.
PointCountRecord count_hyperelliptic(const UniPoly& h, uint64_t p,
                                     const ExecPolicy& policy = global_policy());

// Recognises single-equation varieties of the shape y^2 = h(x), odd deg >= 3.
std::optional<UniPoly> hyperelliptic_model(const Variety& v);

enum class CountMethod { Auto, BruteForce, CharSum };

// Per-variety dispatcher: plans once, then counts prime by prime.
class CountContext {
 public:
  explicit CountContext(Variety v);

  const Variety& variety() const { return variety_; }
  bool has_plan() const { return plan_.has_value(); }
  bool is_bad(uint64_t p) const { return bad_.is_bad(p); }

  uint64_t count(uint64_t p, CountMethod method = CountMethod::Auto,
                 const ExecPolicy& policy = global_policy()) const;
  PointCountRecord record(uint64_t p, CountMethod method = CountMethod::Auto,
                          const ExecPolicy& policy = global_policy()) const;

 private:
  Variety variety_;
  std::optional<CharsumPlan> plan_;
  std::optional<UniPoly> hyper_;
  BadPrimeRule bad_;
};

// Sum over the F_p-points of V of exp(2*pi*i*(f(x) + h.x)/p). The modulus of
// the result never exceeds the number of points.
std::complex<double> exp_sum(const Variety& v, const IntPoly& f, std::span<const uint64_t> h,
                             uint64_t p, const ExecPolicy& policy = global_policy());

// lhs = sum over all h in [0,p)^n of |exp_sum(V, 0, h, p)|^2, rhs = p^n * n_affine.
// These agree exactly in exact arithmetic; the gap measures roundoff.
std::pair<double, double> parseval_check(const Variety& v, uint64_t p,
                                         const ExecPolicy& policy = global_policy());

}  // namespace frobscan

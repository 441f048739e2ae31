#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobscan/counting.hpp"
#include "frobscan/exec.hpp"
#include "frobscan/poly.hpp"

namespace frobscan {

// One-parameter hyperelliptic family C_u : y^2 = f(t)(t - u) with f separable
// of even degree 2g. a_list holds the excluded constants a_i; the equivalent
// shifted constants alpha_i = a_i - 1 enter through N(p) = p - trace.
struct FamilySpec {
  UniPoly f;
  int64_t g = 0;
  std::vector<int64_t> a_list;
  BigInt disc_f;  // cached exact discriminant, never zero

  static FamilySpec make(UniPoly f, std::vector<int64_t> a_list);
  static FamilySpec from_alpha(UniPoly f, const std::vector<int64_t>& alpha_list);
  std::vector<int64_t> alpha_list() const;  // a_i - 1
  bool good_prime(uint64_t p) const;        // p odd, p ∤ lc(f) disc(f)
};

// The member curve as a two-variable variety y^2 - f(t)(t-u), with
// discriminant generator f(t)(t-u) for bad-prime detection.
Variety family_member(const FamilySpec& spec, const BigInt& u);

// Fiber parameters u mod p whose trace hits an excluded value 1 - a_i.
struct DpRecord {
  uint64_t p = 0;
  std::vector<uint64_t> members;
  uint64_t size = 0;
  uint64_t skipped_bad_u = 0;  // fibers with f(u) = 0 mod p (non-squarefree model)
};

// Scans all u in [0,p) with O(p^2) character-sum work. For
// p > 4g^2 + max|1 - a_i| the trace is compared as an integer, below that
// threshold as a residue mod p.
DpRecord compute_dp(const FamilySpec& spec, uint64_t p,
                    const ExecPolicy& policy = global_policy());

struct ExceptionalCount {
  uint64_t count = 0;
  std::vector<int64_t> witnesses;  // the surviving u in [-T, T]
};

// Count of u in [-T, T] whose reduction lies in D_p for every good p < q.
ExceptionalCount exceptional_count(const FamilySpec& spec, uint64_t t, double q,
                                   const ExecPolicy& policy = global_policy());

struct SieveExperimentReport {
  std::string f_text;
  int64_t g = 0;
  std::vector<int64_t> alpha;   // N-side constants alpha_i = a_i - 1
  std::vector<int64_t> a_list;  // trace-side constants a_i
  uint64_t t = 0;
  double k = 1.0;
  double q_theorem = 0.0;  // Q_g(T) from the closed form
  double q_used = 0.0;     // the sieving cutoff actually scanned
  uint64_t s_empirical = 0;
  std::vector<int64_t> witnesses;
  std::optional<double> larger_sieve;  // absent when some D_p is empty or the
                                       // denominator is not positive
  double theorem_ceiling = 0.0;
  std::optional<bool> s_le_bound;  // consistency flag when the bound exists

  std::string to_json_string(int indent = -1) const;
};

// Runs the family experiment: Q from the closed form (or the override, which
// exists because Q_g(T) is astronomically large at desk-scale T), the
// empirical survivor count, the larger-sieve evaluation with nu(p) = |D_p|,
// and the theorem's predicted ceiling. Never asserts empirical <= ceiling:
// the asymptotic hides an absolute constant.
SieveExperimentReport sieve_experiment(const FamilySpec& spec, uint64_t t, double k,
                                       const ExecPolicy& policy = global_policy(),
                                       std::optional<double> q_override = std::nullopt);

}  // namespace frobscan

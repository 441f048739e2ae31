#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "frobscan/bigint.hpp"
#include "frobscan/exec.hpp"

namespace frobscan {

// gamma(g) = 4g^2 + 2g + 4, the sieve exponent; even and >= 10 for g >= 1.
int64_t sieve_gamma(int64_t g);

struct SieveParams {
  int64_t g = 1;     // genus
  int64_t n = 1;     // number of excluded trace values
  double k = 1.0;    // the family constant K_g; free parameter, default 1.0
  double t = 2.0;    // height bound T >= 2

  void validate() const;
};

// Q_g(T) = (2K log T)^(gamma/2) * (log(2K log T))^((gamma/2)(1 - 2/(gamma+2n-2))).
// Requires 2K log T > 1 so that the outer logarithm is positive.
double q_bound(const SieveParams& params);

// Upper bound for the surviving count of the larger sieve:
//   sum_{p<=Q} log p / (sum_{p<=Q} log(p)/nu(p) - log(2T)),
// or nullopt when the denominator is not positive. nu must be defined and
// positive for every prime p <= Q.
std::optional<double> larger_sieve_bound(double q, double t,
                                         const std::map<uint64_t, double>& nu);

// delta(l) = (l-n)/l * (l/(l+1))^(2g^2+g+1), exact.
BigRat delta_ell(uint64_t ell, int64_t g, int64_t n);

// Number of monic degree-2g polynomials f over F_l with
// T^(2g) f(p/T) = p^g f(T) and f'(0) outside the excluded residues, counted
// by enumeration of all l^(2g) coefficient vectors. With no exclusions the
// count is l^g.
uint64_t count_p_symplectic(uint64_t ell, int64_t g, int64_t p,
                            const std::vector<int64_t>& excluded_traces,
                            const ExecPolicy& policy = global_policy());

struct Value1Input {
  int64_t m1 = 0;       // value at 1 of the comparison function
  int64_t b_minus = 0;  // lower trace bound
  int64_t b_plus = 0;   // upper trace bound; must exceed b_minus
};

// max(|M1 - b-|, |M1 - b+|) >= b+ - b-: the positive-density criterion that
// needs no witness prime.
bool check_value1(const Value1Input& v);

// Irreducible smooth affine surface X with smooth projective model Y and
// boundary curve C = Y - X: assembles M1 = b2(Y) - b1(Y) + 1 - chi_c(C) - a,
// b- = -b2(Y) - b2(C) - 1, b+ = b2(Y) + 1.
bool surface_value1(int64_t b1_y, int64_t b2_y, int64_t b2_c, int64_t chic_c, int64_t a);

// Irreducible smooth threefold X with model Y (b3(Y) = 0) and boundary
// surface S: M1 = b2(Y) + 1 - b2(S) + b1(S) - b0(S) - a,
// b± = ±(b2(Y) + b2(S) + 1).
bool threefold_value1(int64_t b2_y, int64_t b0_s, int64_t b1_s, int64_t b2_s, int64_t a);

}  // namespace frobscan

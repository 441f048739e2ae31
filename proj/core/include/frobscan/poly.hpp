#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frobscan/bigint.hpp"
#include "frobscan/error.hpp"

namespace frobscan {

// Graded lexicographic order on exponent vectors (declared variable order),
// largest term first so printing starts with the leading term.
struct TermOrder {
  bool operator()(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) const {
    uint64_t da = 0, db = 0;
    for (uint32_t e : a) da += e;
    for (uint32_t e : b) db += e;
    if (da != db) return da > db;
    return a > b;
  }
};

// Multivariate polynomial over Z in canonical form: no zero terms, every
// exponent vector has one entry per declared variable.
class IntPoly {
 public:
  using Terms = std::map<std::vector<uint32_t>, BigInt, TermOrder>;

  IntPoly() = default;
  explicit IntPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static IntPoly constant(std::vector<std::string> vars, BigInt c);
  static IntPoly variable(std::vector<std::string> vars, std::string_view name);

  const std::vector<std::string>& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  BigInt constant_value() const;  // value of a constant polynomial (0 when zero)
  std::size_t var_index(std::string_view name) const;  // throws if unknown
  bool uses_var(std::size_t idx) const;
  uint32_t degree_in(std::size_t idx) const;
  uint64_t total_degree() const;  // 0 for the zero polynomial

  void add_term(std::vector<uint32_t> exps, const BigInt& c);

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& rhs);
  IntPoly& operator-=(const IntPoly& rhs);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly pow(uint32_t e) const;

  bool operator==(const IntPoly&) const = default;

  // Value at a point with point.size() == vars().size(), reduced into [0, p).
  uint64_t eval_mod_p(std::span<const uint64_t> point, uint64_t p) const;

  // Substitutes an exact integer for one variable and drops it from the list.
  IntPoly specialize(std::string_view var, const BigInt& value) const;

  std::string to_string() const;  // parseable by parse_poly (canonical form)

 private:
  std::vector<std::string> vars_;
  Terms terms_;
};

// Dense univariate polynomial over Z, lowest degree first, trimmed.
class UniPoly {
 public:
  UniPoly() : var_("x") {}
  UniPoly(std::string var, std::vector<BigInt> coeffs);

  const std::string& var() const { return var_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
  const BigInt& lc() const;  // throws on the zero polynomial

  UniPoly derivative() const;
  BigInt eval(const BigInt& x) const;
  uint64_t eval_mod_p(uint64_t x, uint64_t p) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);

  IntPoly to_intpoly() const;
  static std::optional<UniPoly> from_intpoly(const IntPoly& p);

  bool operator==(const UniPoly&) const = default;
  std::string to_string() const { return to_intpoly().to_string(); }

 private:
  std::string var_;
  std::vector<BigInt> coeffs_;
};

// Sylvester-matrix resultant, exact via fraction-free (Bareiss) elimination.
BigInt resultant(const UniPoly& f, const UniPoly& g);

// disc(h) = (-1)^{d(d-1)/2} Res(h, h') / lc(h); zero iff h has a repeated
// root over the algebraic closure. Requires deg h >= 1.
BigInt discriminant(const UniPoly& h);

// disc(h) mod p without exact big-integer work (F_p Euclidean resultant,
// degree drops of h' mod p accounted for). Requires p prime with p not
// dividing lc(h).
uint64_t discriminant_mod_p(const UniPoly& h, uint64_t p);

// Parses the expression grammar
//   expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
//   factor := base ('^' uint)? ; base := int | ident | '(' expr ')'
// No implicit multiplication. Every identifier must appear in `variables`.
IntPoly parse_poly(std::string_view text, std::vector<std::string> variables);

// Same grammar restricted to at most one distinct identifier.
UniPoly parse_unipoly(std::string_view text);

}  // namespace frobscan

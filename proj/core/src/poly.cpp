#include "frobscan/poly.hpp"

#include <algorithm>

#include "frobscan/ff.hpp"

namespace frobscan {

IntPoly IntPoly::constant(std::vector<std::string> vars, BigInt c) {
  IntPoly p(std::move(vars));
  if (c != 0) p.terms_.emplace(std::vector<uint32_t>(p.vars_.size(), 0), std::move(c));
  return p;
}

IntPoly IntPoly::variable(std::vector<std::string> vars, std::string_view name) {
  IntPoly p(std::move(vars));
  std::vector<uint32_t> e(p.vars_.size(), 0);
  e[p.var_index(name)] = 1;
  p.terms_.emplace(std::move(e), BigInt(1));
  return p;
}

bool IntPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](uint32_t x) { return x == 0; });
}

BigInt IntPoly::constant_value() const {
  if (!is_constant())
    throw Error(ErrorCode::Domain, "constant_value on non-constant polynomial");
  return terms_.empty() ? BigInt(0) : terms_.begin()->second;
}

std::size_t IntPoly::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  throw Error(ErrorCode::Domain, "unknown variable: " + std::string(name));
}

bool IntPoly::uses_var(std::size_t idx) const {
  for (const auto& [e, c] : terms_)
    if (e[idx] != 0) return true;
  return false;
}

uint32_t IntPoly::degree_in(std::size_t idx) const {
  uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
  return d;
}

uint64_t IntPoly::total_degree() const {
  // leading term of the graded order carries the total degree
  if (terms_.empty()) return 0;
  uint64_t d = 0;
  for (uint32_t e : terms_.begin()->first) d += e;
  return d;
}

void IntPoly::add_term(std::vector<uint32_t> exps, const BigInt& c) {
  if (exps.size() != vars_.size())
    throw Error(ErrorCode::Domain, "exponent vector length mismatch");
  if (c == 0) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(std::move(exps), c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

static void require_same_vars(const IntPoly& a, const IntPoly& b) {
  if (a.vars() != b.vars())
    throw Error(ErrorCode::Domain, "polynomial arithmetic across different variable lists");
}

IntPoly IntPoly::operator-() const {
  IntPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
  require_same_vars(*this, rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
  require_same_vars(*this, rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  require_same_vars(a, b);
  IntPoly r(a.vars_);
  std::vector<uint32_t> e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        uint64_t s = uint64_t(ea[i]) + uint64_t(eb[i]);
        if (s > 0x7fffffffu) throw Error(ErrorCode::Domain, "exponent overflow in product");
        e[i] = static_cast<uint32_t>(s);
      }
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

IntPoly IntPoly::pow(uint32_t e) const {
  if (e == 0) return constant(vars_, 1);
  if (terms_.size() == 1) {
    // monomial power stays a single term
    const auto& [exps, c] = *terms_.begin();
    std::vector<uint32_t> ne(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) {
      uint64_t s = uint64_t(exps[i]) * e;
      if (s > 0x7fffffffu) throw Error(ErrorCode::Domain, "exponent overflow in power");
      ne[i] = static_cast<uint32_t>(s);
    }
    IntPoly r(vars_);
    r.terms_.emplace(std::move(ne), pow_bigint(c, e));
    return r;
  }
  IntPoly base = *this;
  IntPoly r = constant(vars_, 1);
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

uint64_t IntPoly::eval_mod_p(std::span<const uint64_t> point, uint64_t p) const {
  if (point.size() != vars_.size())
    throw Error(ErrorCode::Domain, "point dimension mismatch");
  if (p < 2) throw Error(ErrorCode::Domain, "modulus must be >= 2");
  uint64_t acc = 0;
  for (const auto& [e, c] : terms_) {
    uint64_t t = mod_u64(c, p);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t = mulmod(t, powmod(point[i] % p, e[i], p), p);
    acc += t;
    if (acc >= p) acc -= p;
  }
  return acc;
}

IntPoly IntPoly::specialize(std::string_view var, const BigInt& value) const {
  std::size_t idx = var_index(var);
  std::vector<std::string> nvars;
  nvars.reserve(vars_.size() - 1);
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (i != idx) nvars.push_back(vars_[i]);
  IntPoly r(std::move(nvars));
  std::vector<uint32_t> ne(r.vars_.size());
  for (const auto& [e, c] : terms_) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != idx) ne[k++] = e[i];
    r.add_term(ne, e[idx] == 0 ? c : BigInt(c * pow_bigint(value, e[idx])));
  }
  return r;
}

std::string IntPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    BigInt mag = first ? c : BigInt(abs(c));
    if (!first) out += c > 0 ? " + " : " - ";
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else if (first && mag == -1) {
      out += "-1*" + mono;  // "-x" is not in the grammar
    } else {
      out += mag.get_str() + "*" + mono;
    }
    first = false;
  }
  return out;
}

UniPoly::UniPoly(std::string var, std::vector<BigInt> coeffs)
    : var_(std::move(var)), coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigInt& UniPoly::lc() const {
  if (coeffs_.empty()) throw Error(ErrorCode::Domain, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return UniPoly(var_, {});
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * BigInt(i);
  return UniPoly(var_, std::move(d));
}

BigInt UniPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

uint64_t UniPoly::eval_mod_p(uint64_t x, uint64_t p) const {
  uint64_t acc = 0;
  x %= p;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = (mulmod(acc, x, p) + mod_u64(*it, p)) % p;
  return acc;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return UniPoly(a.var_, std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return UniPoly(a.var_, std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly(a.var_, {});
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(a.var_, std::move(c));
}

IntPoly UniPoly::to_intpoly() const {
  IntPoly p({var_});
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    p.add_term({static_cast<uint32_t>(i)}, coeffs_[i]);
  return p;
}

std::optional<UniPoly> UniPoly::from_intpoly(const IntPoly& p) {
  // at most one variable may actually occur
  std::optional<std::size_t> used;
  for (std::size_t i = 0; i < p.vars().size(); ++i) {
    if (p.uses_var(i)) {
      if (used) return std::nullopt;
      used = i;
    }
  }
  std::string var = used ? p.vars()[*used] : (p.vars().empty() ? "x" : p.vars()[0]);
  std::vector<BigInt> coeffs;
  for (const auto& [e, c] : p.terms()) {
    uint32_t deg = used ? e[*used] : 0;
    if (coeffs.size() < deg + 1) coeffs.resize(deg + 1, BigInt(0));
    coeffs[deg] = c;
  }
  return UniPoly(std::move(var), std::move(coeffs));
}

// Bareiss fraction-free determinant; entries stay exact divisions of minors.
static BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : BigInt(-m[n - 1][n - 1]);
}

BigInt resultant(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  const int m = f.degree();
  const int n = g.degree();
  if (m == 0 && n == 0) return 1;
  if (m == 0) return pow_bigint(f.lc(), n);
  if (n == 0) return pow_bigint(g.lc(), m);
  const std::size_t dim = static_cast<std::size_t>(m + n);
  std::vector<std::vector<BigInt>> s(dim, std::vector<BigInt>(dim, BigInt(0)));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) s[r][r + j] = f.coeff(m - j);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) s[n + r][r + j] = g.coeff(n - j);
  return bareiss_det(std::move(s));
}

BigInt discriminant(const UniPoly& h) {
  const int d = h.degree();
  if (d < 1) throw Error(ErrorCode::Domain, "discriminant requires degree >= 1");
  BigInt res = resultant(h, h.derivative());
  BigInt disc;
  if (!mpz_divisible_p(res.get_mpz_t(), h.lc().get_mpz_t()))
    throw Error(ErrorCode::Internal, "resultant not divisible by leading coefficient");
  mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), h.lc().get_mpz_t());
  if ((uint64_t(d) * (d - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

namespace {

// F_p division step: returns A mod B, both dense, lc(B) != 0.
std::vector<uint64_t> poly_mod_fp(std::vector<uint64_t> a, const std::vector<uint64_t>& b,
                                  uint64_t p) {
  const std::size_t db = b.size() - 1;
  uint64_t inv_lb = powmod(b.back(), p - 2, p);
  while (a.size() >= b.size() && !a.empty()) {
    uint64_t q = mulmod(a.back(), inv_lb, p);
    std::size_t shift = a.size() - b.size();
    if (q != 0)
      for (std::size_t i = 0; i <= db; ++i) {
        uint64_t sub = mulmod(q, b[i], p);
        a[shift + i] = (a[shift + i] + p - sub) % p;
      }
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

uint64_t resultant_fp(std::vector<uint64_t> a, std::vector<uint64_t> b, uint64_t p) {
  if (a.empty() || b.empty()) return 0;
  uint64_t res = 1;
  while (true) {
    const std::size_t da = a.size() - 1, db = b.size() - 1;
    if (db == 0) return mulmod(res, powmod(b[0], da, p), p);
    std::vector<uint64_t> r = poly_mod_fp(a, b, p);
    if ((da * db) % 2 == 1 && res != 0) res = p - res;
    if (r.empty()) return 0;
    res = mulmod(res, powmod(b.back(), da - (r.size() - 1), p), p);
    a = std::move(b);
    b = std::move(r);
  }
}

}  // namespace

uint64_t discriminant_mod_p(const UniPoly& h, uint64_t p) {
  const int d = h.degree();
  if (d < 1) throw Error(ErrorCode::Domain, "discriminant requires degree >= 1");
  if (p < 2) throw Error(ErrorCode::Domain, "modulus must be prime >= 2");
  uint64_t lc = mod_u64(h.lc(), p);
  if (lc == 0)
    throw Error(ErrorCode::Domain, "discriminant_mod_p: p divides the leading coefficient");

  std::vector<uint64_t> a(d + 1), b;
  for (int i = 0; i <= d; ++i) a[i] = mod_u64(h.coeff(i), p);
  for (int i = 1; i <= d; ++i) b.push_back(mulmod(mod_u64(h.coeff(i), p), i % p, p));
  while (!b.empty() && b.back() == 0) b.pop_back();

  // Sylvester shape is (d, d-1) over Z; a degree drop of h' mod p
  // contributes lc(h)^(d-1-deg) to the reduced determinant.
  uint64_t res;
  if (b.empty()) {
    res = 0;
  } else {
    uint64_t drop = powmod(lc, static_cast<uint64_t>(d - 1) - (b.size() - 1), p);
    res = mulmod(drop, resultant_fp(a, b, p), p);
  }
  uint64_t disc = mulmod(res, powmod(lc, p - 2, p), p);
  if ((uint64_t(d) * (d - 1) / 2) % 2 == 1) disc = disc == 0 ? 0 : p - disc;
  return disc;
}

}  // namespace frobscan

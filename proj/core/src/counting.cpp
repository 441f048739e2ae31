#include "frobscan/counting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "frobscan/error.hpp"

namespace frobscan {

namespace {

constexpr std::size_t kDenseDegreeMax = 64;

uint64_t pow_saturating(uint64_t base, uint64_t e) {
  __uint128_t r = 1;
  for (uint64_t i = 0; i < e; ++i) {
    r *= base;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<uint64_t>(r);
}

// ---- mod-p term lists ------------------------------------------------------

struct ModTerm {
  std::vector<uint32_t> e;
  uint64_t c;
};

struct ModPoly {
  std::size_t nvars = 0;
  std::vector<ModTerm> terms;

  static ModPoly from_intpoly(const IntPoly& p, uint64_t prime) {
    ModPoly m;
    m.nvars = p.vars().size();
    for (const auto& [e, c] : p.terms()) {
      uint64_t r = mod_u64(c, prime);
      if (r != 0) m.terms.push_back({e, r});
    }
    return m;
  }

  bool is_constant() const {
    for (const auto& t : terms)
      for (uint32_t e : t.e)
        if (e != 0) return false;
    return true;
  }

  // only meaningful when is_constant(); at most one term can survive reduction
  uint64_t constant_value() const { return terms.empty() ? 0 : terms[0].c; }

  bool uses(std::size_t v) const {
    for (const auto& t : terms)
      if (t.e[v] != 0) return true;
    return false;
  }

  ModPoly specialize(std::size_t v, uint64_t val, uint64_t p) const {
    uint32_t max_e = 0;
    for (const auto& t : terms) max_e = std::max(max_e, t.e[v]);
    std::vector<uint64_t> pw;
    if (max_e <= kDenseDegreeMax) {
      pw.resize(max_e + 1);
      pw[0] = 1 % p;
      for (uint32_t i = 1; i <= max_e; ++i) pw[i] = mulmod(pw[i - 1], val, p);
    }
    ModPoly r;
    r.nvars = nvars;
    for (const auto& t : terms) {
      uint64_t c = t.c;
      if (t.e[v] != 0)
        c = mulmod(c, pw.empty() ? powmod(val, t.e[v], p) : pw[t.e[v]], p);
      if (c == 0) continue;
      std::vector<uint32_t> e = t.e;
      e[v] = 0;
      bool merged = false;
      for (auto& rt : r.terms) {
        if (rt.e == e) {
          rt.c = (rt.c + c) % p;
          merged = true;
          break;
        }
      }
      if (!merged) r.terms.push_back({std::move(e), c});
    }
    std::erase_if(r.terms, [](const ModTerm& t) { return t.c == 0; });
    return r;
  }
};

// univariate evaluator for the innermost loop: dense Horner for small degree,
// term-by-term powmod for sparse high-degree polynomials (e.g. x^457 + 1)
struct UniModEval {
  std::vector<uint64_t> dense;  // lowest degree first
  std::vector<std::pair<uint32_t, uint64_t>> sparse;
  uint64_t constant = 0;

  static UniModEval from_modpoly(const ModPoly& m, std::size_t var, uint64_t p) {
    UniModEval u;
    uint32_t deg = 0;
    for (const auto& t : m.terms) deg = std::max(deg, t.e[var]);
    if (deg <= kDenseDegreeMax) {
      u.dense.assign(deg + 1, 0);
      for (const auto& t : m.terms) u.dense[t.e[var]] = (u.dense[t.e[var]] + t.c) % p;
      while (!u.dense.empty() && u.dense.back() == 0) u.dense.pop_back();
      if (u.dense.size() == 1) {
        u.constant = u.dense[0];
        u.dense.clear();
      }
    } else {
      for (const auto& t : m.terms) {
        if (t.e[var] == 0)
          u.constant = (u.constant + t.c) % p;
        else
          u.sparse.emplace_back(t.e[var], t.c);
      }
    }
    return u;
  }

  uint64_t eval(uint64_t x, uint64_t p) const {
    if (!dense.empty()) {
      uint64_t acc = 0;
      for (auto it = dense.rbegin(); it != dense.rend(); ++it)
        acc = (mulmod(acc, x, p) + *it) % p;
      return acc;
    }
    uint64_t acc = constant;
    for (const auto& [e, c] : sparse) acc = (acc + mulmod(c, powmod(x, e, p), p)) % p;
    return acc;
  }
};

struct ItemSet {
  std::vector<ModPoly> eqs;
  std::vector<ModPoly> factors;  // weight (1 + chi(value)) each
};

// weighted count over assignments of vars_left; constants are folded first
uint64_t rec_count(const ItemSet& items, std::span<const std::size_t> vars_left, uint64_t p,
                   const ChiEvaluator* chi, const ExecPolicy& policy, bool top);

uint64_t leaf_count(const std::vector<UniModEval>& eqs, const std::vector<UniModEval>& factors,
                    uint64_t lo, uint64_t hi, uint64_t p, const ChiEvaluator* chi) {
  uint64_t sum = 0;
  for (uint64_t x = lo; x < hi; ++x) {
    uint64_t w = 1;
    for (const auto& eq : eqs) {
      if (eq.eval(x, p) != 0) {
        w = 0;
        break;
      }
    }
    if (w == 0) continue;
    for (const auto& f : factors) {
      w *= static_cast<uint64_t>(1 + (*chi)(f.eval(x, p)));
      if (w == 0) break;
    }
    sum += w;
  }
  return sum;
}

uint64_t enumerate_var(const ItemSet& live, std::span<const std::size_t> vars_left, uint64_t p,
                       const ChiEvaluator* chi, const ExecPolicy& policy, bool top) {
  const std::size_t v = vars_left[0];
  if (vars_left.size() == 1) {
    std::vector<UniModEval> eqs, factors;
    for (const auto& e : live.eqs) eqs.push_back(UniModEval::from_modpoly(e, v, p));
    for (const auto& f : live.factors) factors.push_back(UniModEval::from_modpoly(f, v, p));
    unsigned threads = policy.resolved_threads();
    if (!top || threads <= 1 || p < 4096)
      return leaf_count(eqs, factors, 0, p, p, chi);
    const uint64_t block = 4096;
    const uint64_t nblocks = (p + block - 1) / block;
    auto parts = map_blocks<uint64_t>(nblocks, threads, [&](uint64_t b) {
      return leaf_count(eqs, factors, b * block, std::min(p, (b + 1) * block), p, chi);
    });
    uint64_t sum = 0;
    for (uint64_t s : parts) sum += s;
    return sum;
  }

  auto count_value = [&](uint64_t val) {
    ItemSet next;
    for (const auto& e : live.eqs) next.eqs.push_back(e.specialize(v, val, p));
    for (const auto& f : live.factors) next.factors.push_back(f.specialize(v, val, p));
    return rec_count(next, vars_left.subspan(1), p, chi, policy, false);
  };

  unsigned threads = policy.resolved_threads();
  if (top && threads > 1 && p >= 8) {
    auto parts = map_blocks<uint64_t>(p, threads, count_value);
    uint64_t sum = 0;
    for (uint64_t s : parts) sum += s;
    return sum;
  }
  uint64_t sum = 0;
  for (uint64_t val = 0; val < p; ++val) sum += count_value(val);
  return sum;
}

uint64_t rec_count(const ItemSet& items, std::span<const std::size_t> vars_left, uint64_t p,
                   const ChiEvaluator* chi, const ExecPolicy& policy, bool top) {
  uint64_t mult = 1;
  ItemSet live;
  for (const auto& eq : items.eqs) {
    if (eq.is_constant()) {
      if (eq.constant_value() != 0) return 0;
    } else {
      live.eqs.push_back(eq);
    }
  }
  for (const auto& f : items.factors) {
    if (f.is_constant()) {
      uint64_t w = static_cast<uint64_t>(1 + (*chi)(f.constant_value()));
      if (w == 0) return 0;
      mult *= w;
    } else {
      live.factors.push_back(f);
    }
  }
  if (live.eqs.empty() && live.factors.empty())
    return mult * pow_saturating(p, vars_left.size());
  return mult * enumerate_var(live, vars_left, p, chi, policy, top);
}

IntPoly restrict_vars(const IntPoly& p, const std::vector<std::string>& new_vars,
                      const std::vector<std::size_t>& keep) {
  IntPoly r(new_vars);
  std::vector<uint32_t> e(new_vars.size());
  for (const auto& [exps, c] : p.terms()) {
    for (std::size_t i = 0; i < keep.size(); ++i) e[i] = exps[keep[i]];
    r.add_term(e, c);
  }
  return r;
}

}  // namespace

// ---- variety ---------------------------------------------------------------

void Variety::validate() const {
  for (const auto& eq : equations)
    if (eq.vars() != vars)
      throw Error(ErrorCode::Domain, "equation is not expressed over the declared variables");
  BadPrimeRule rule(*this);  // rejects a degenerate generator
  (void)rule;
}

Variety Variety::from_text(std::string_view text) {
  Variety v;
  std::vector<std::string> eq_texts;
  std::string disc_text;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    auto rest_of = [&]() {
      std::string rest;
      std::getline(ls, rest);
      return rest;
    };
    if (head == "vars:") {
      std::string name;
      while (ls >> name) v.vars.push_back(name);
      if (v.vars.empty())
        throw Error(ErrorCode::Parse, "variety file: empty vars: line " + std::to_string(lineno));
    } else if (head == "eq:") {
      eq_texts.push_back(rest_of());
    } else if (head == "bad:") {
      uint64_t p;
      while (ls >> p) v.explicit_bad.insert(p);
    } else if (head == "disc_of:") {
      disc_text = rest_of();
    } else {
      throw Error(ErrorCode::Parse,
                  "variety file: unknown directive '" + head + "' on line " + std::to_string(lineno));
    }
  }
  if (v.vars.empty()) throw Error(ErrorCode::Parse, "variety file: missing vars: line");
  for (const auto& t : eq_texts) v.equations.push_back(parse_poly(t, v.vars));
  if (!disc_text.empty()) {
    UniPoly gen = parse_unipoly(disc_text);
    if (std::find(v.vars.begin(), v.vars.end(), gen.var()) == v.vars.end() && !gen.is_zero() &&
        gen.degree() >= 1)
      throw Error(ErrorCode::Parse, "disc_of: variable '" + gen.var() + "' is not declared");
    v.disc_generator = std::move(gen);
  }
  v.validate();
  return v;
}

Variety Variety::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open variety file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

BadPrimeRule::BadPrimeRule(const Variety& v) : explicit_bad_(v.explicit_bad) {
  if (v.disc_generator) {
    const UniPoly& gen = *v.disc_generator;
    if (gen.degree() < 1)
      throw Error(ErrorCode::Domain, "discriminant generator must have degree >= 1");
    BigInt disc = discriminant(gen);
    if (disc == 0)
      throw Error(ErrorCode::Domain,
                  "degenerate discriminant generator (repeated root), every prime would be bad");
    generator_modulus_ = abs(BigInt(2) * gen.lc() * disc);
  }
}

bool BadPrimeRule::is_bad(uint64_t p) const {
  if (p == 2) return true;
  if (explicit_bad_.count(p)) return true;
  return generator_modulus_ != 0 && mod_u64(generator_modulus_, p) == 0;
}

bool is_bad_prime(const Variety& v, uint64_t p) { return BadPrimeRule(v).is_bad(p); }

// ---- planner ----------------------------------------------------------------

std::optional<CharsumPlan> plan_charsum(const Variety& v) {
  const std::size_t nv = v.vars.size();
  const std::size_t ne = v.equations.size();
  std::vector<std::vector<std::size_t>> users(nv);
  for (std::size_t ei = 0; ei < ne; ++ei)
    for (std::size_t vi = 0; vi < nv; ++vi)
      if (v.equations[ei].uses_var(vi)) users[vi].push_back(ei);

  std::vector<bool> consumed(ne, false), eliminated(nv, false);
  std::vector<IntPoly> factors;
  for (std::size_t vi = 0; vi < nv; ++vi) {
    if (users[vi].size() != 1) continue;
    const std::size_t ei = users[vi][0];
    if (consumed[ei]) continue;
    const IntPoly& eq = v.equations[ei];
    std::size_t square_terms = 0;
    bool shape_ok = true;
    BigInt c;
    for (const auto& [e, coef] : eq.terms()) {
      if (e[vi] == 0) continue;
      ++square_terms;
      if (square_terms > 1 || e[vi] != 2) {
        shape_ok = false;
        break;
      }
      for (std::size_t j = 0; j < nv && shape_ok; ++j)
        if (j != vi && e[j] != 0) shape_ok = false;
      c = coef;
    }
    if (!shape_ok || square_terms != 1 || (c != 1 && c != -1)) continue;
    // eq = c*y^2 + R = 0  <=>  y^2 = -c*R; weight per base point is 1 + chi(-c*R)
    IntPoly g(v.vars);
    for (const auto& [e, coef] : eq.terms()) {
      if (e[vi] != 0) continue;
      g.add_term(e, c == 1 ? BigInt(-coef) : coef);
    }
    factors.push_back(std::move(g));
    consumed[ei] = true;
    eliminated[vi] = true;
  }
  if (factors.empty()) return std::nullopt;

  CharsumPlan plan;
  std::vector<std::size_t> keep;
  for (std::size_t vi = 0; vi < nv; ++vi) {
    if (!eliminated[vi]) {
      keep.push_back(vi);
      plan.vars.push_back(v.vars[vi]);
    }
  }
  plan.eliminated = nv - keep.size();
  for (auto& g : factors) plan.chi_factors.push_back(restrict_vars(g, plan.vars, keep));
  for (std::size_t ei = 0; ei < ne; ++ei)
    if (!consumed[ei]) plan.equations.push_back(restrict_vars(v.equations[ei], plan.vars, keep));
  return plan;
}

// ---- counting entry points ---------------------------------------------------

namespace {

uint64_t eval_plan(const CharsumPlan& plan, uint64_t p, const ExecPolicy& policy) {
  if (p < 3 || p % 2 == 0)
    throw Error(ErrorCode::Domain, "char-sum counting requires an odd prime, got " + std::to_string(p));
  const std::size_t nv = plan.vars.size();

  struct Item {
    ModPoly poly;
    bool factor;
  };
  std::vector<Item> items;
  for (const auto& g : plan.chi_factors) items.push_back({ModPoly::from_intpoly(g, p), true});
  for (const auto& e : plan.equations) items.push_back({ModPoly::from_intpoly(e, p), false});

  // connected components over shared variables
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& it : items) {
    std::optional<std::size_t> first;
    for (std::size_t vi = 0; vi < nv; ++vi) {
      if (!it.poly.uses(vi)) continue;
      if (!first)
        first = vi;
      else
        parent[find(vi)] = find(*first);
    }
  }

  std::vector<std::vector<std::size_t>> comp_vars;
  std::vector<ItemSet> comp_items;
  std::vector<std::size_t> root_of(nv, SIZE_MAX);
  std::size_t unused = 0;
  std::vector<bool> var_used(nv, false);
  for (const auto& it : items)
    for (std::size_t vi = 0; vi < nv; ++vi)
      if (it.poly.uses(vi)) var_used[vi] = true;
  for (std::size_t vi = 0; vi < nv; ++vi) {
    if (!var_used[vi]) {
      ++unused;
      continue;
    }
    std::size_t r = find(vi);
    if (root_of[r] == SIZE_MAX) {
      root_of[r] = comp_vars.size();
      comp_vars.emplace_back();
      comp_items.emplace_back();
    }
    comp_vars[root_of[r]].push_back(vi);
  }
  ItemSet const_items;  // items using no variable at all
  for (auto& it : items) {
    std::size_t home = SIZE_MAX;
    for (std::size_t vi = 0; vi < nv && home == SIZE_MAX; ++vi)
      if (it.poly.uses(vi)) home = root_of[find(vi)];
    ItemSet& dst = home == SIZE_MAX ? const_items : comp_items[home];
    (it.factor ? dst.factors : dst.eqs).push_back(std::move(it.poly));
  }

  uint64_t work = 0;
  for (const auto& vc : comp_vars) {
    uint64_t w = pow_saturating(p, vc.size());
    work = work > UINT64_MAX - w ? UINT64_MAX : work + w;
  }
  if (work > policy.work_cap)
    throw WorkCapError("char-sum count", work, policy.work_cap);

  ChiEvaluator chi(p);
  __uint128_t total = rec_count(const_items, {}, p, &chi, policy, false);
  for (std::size_t c = 0; c < comp_vars.size() && total != 0; ++c) {
    total *= rec_count(comp_items[c], comp_vars[c], p, &chi, policy, true);
    if (total > UINT64_MAX)
      throw Error(ErrorCode::Domain, "point count exceeds 2^64");
  }
  total *= pow_saturating(p, unused);
  if (total > UINT64_MAX) throw Error(ErrorCode::Domain, "point count exceeds 2^64");
  return static_cast<uint64_t>(total);
}

}  // namespace

uint64_t count_affine_bruteforce(const Variety& v, uint64_t p, const ExecPolicy& policy) {
  if (p < 2) throw Error(ErrorCode::Domain, "count requires a prime p >= 2");
  const uint64_t work = pow_saturating(p, v.vars.size());
  if (work > policy.work_cap)
    throw WorkCapError("brute-force count", work, policy.work_cap);
  ItemSet items;
  for (const auto& eq : v.equations) items.eqs.push_back(ModPoly::from_intpoly(eq, p));
  std::vector<std::size_t> order(v.vars.size());
  std::iota(order.begin(), order.end(), 0);
  ChiEvaluator* no_chi = nullptr;
  return rec_count(items, order, p, no_chi, policy, true);
}

uint64_t count_affine_charsum(const Variety& v, uint64_t p, const ExecPolicy& policy) {
  auto plan = plan_charsum(v);
  if (!plan)
    throw Error(ErrorCode::NoPlan,
                "no eliminable square-only variable; fall back to brute force");
  return eval_plan(*plan, p, policy);
}

PointCountRecord count_hyperelliptic(const UniPoly& h, uint64_t p, const ExecPolicy& policy) {
  const int d = h.degree();
  if (d < 3 || d % 2 == 0)
    throw Error(ErrorCode::Domain,
                "hyperelliptic counting supports odd degree >= 3 only, got degree " +
                    std::to_string(d));
  if (p < 3 || p % 2 == 0)
    throw Error(ErrorCode::Domain, "hyperelliptic counting requires an odd prime");
  if (p > policy.work_cap) throw WorkCapError("hyperelliptic count", p, policy.work_cap);

  ChiEvaluator chi(p);
  ModPoly hp = ModPoly::from_intpoly(h.to_intpoly(), p);
  UniModEval ev = UniModEval::from_modpoly(hp, 0, p);

  const uint64_t block = 8192;
  const uint64_t nblocks = (p + block - 1) / block;
  auto parts = map_blocks<uint64_t>(nblocks, policy.resolved_threads(), [&](uint64_t b) {
    uint64_t lo = b * block, hi = std::min(p, (b + 1) * block);
    uint64_t sum = 0;
    for (uint64_t x = lo; x < hi; ++x) sum += static_cast<uint64_t>(1 + chi(ev.eval(x, p)));
    return sum;
  });
  uint64_t n = 0;
  for (uint64_t s : parts) n += s;

  PointCountRecord rec;
  rec.p = p;
  rec.n_affine = n;
  rec.n_mod_p = n % p;
  rec.trace = static_cast<int64_t>(p) - static_cast<int64_t>(n);
  rec.good_reduction = mod_u64(h.lc(), p) != 0 && discriminant_mod_p(h, p) != 0;
  return rec;
}

std::optional<UniPoly> hyperelliptic_model(const Variety& v) {
  if (v.vars.size() != 2 || v.equations.size() != 1) return std::nullopt;
  const IntPoly& eq = v.equations[0];
  for (std::size_t yi = 0; yi < 2; ++yi) {
    const std::size_t xi = 1 - yi;
    std::size_t square_terms = 0;
    bool ok = true;
    BigInt c;
    for (const auto& [e, coef] : eq.terms()) {
      if (e[yi] == 0) continue;
      ++square_terms;
      if (square_terms > 1 || e[yi] != 2 || e[xi] != 0) {
        ok = false;
        break;
      }
      c = coef;
    }
    if (!ok || square_terms != 1 || (c != 1 && c != -1)) continue;
    IntPoly r(v.vars);
    for (const auto& [e, coef] : eq.terms()) {
      if (e[yi] != 0) continue;
      r.add_term(e, c == 1 ? BigInt(-coef) : coef);
    }
    auto h = UniPoly::from_intpoly(r);
    if (h && h->degree() >= 3 && h->degree() % 2 == 1) return h;
  }
  return std::nullopt;
}

CountContext::CountContext(Variety v) : variety_(std::move(v)) {
  variety_.validate();
  plan_ = plan_charsum(variety_);
  hyper_ = hyperelliptic_model(variety_);
  bad_ = BadPrimeRule(variety_);
}

uint64_t CountContext::count(uint64_t p, CountMethod method, const ExecPolicy& policy) const {
  switch (method) {
    case CountMethod::BruteForce:
      return count_affine_bruteforce(variety_, p, policy);
    case CountMethod::CharSum:
      if (!plan_)
        throw Error(ErrorCode::NoPlan, "no eliminable square-only variable in this variety");
      return eval_plan(*plan_, p, policy);
    case CountMethod::Auto:
      if (p != 2 && plan_) return eval_plan(*plan_, p, policy);
      return count_affine_bruteforce(variety_, p, policy);
  }
  throw Error(ErrorCode::Internal, "unreachable");
}

PointCountRecord CountContext::record(uint64_t p, CountMethod method,
                                      const ExecPolicy& policy) const {
  PointCountRecord rec;
  rec.p = p;
  rec.n_affine = count(p, method, policy);
  rec.n_mod_p = rec.n_affine % p;
  if (hyper_) rec.trace = static_cast<int64_t>(p) - static_cast<int64_t>(rec.n_affine);
  rec.good_reduction = !bad_.is_bad(p);
  return rec;
}

// ---- exponential sums --------------------------------------------------------

namespace {

std::vector<std::complex<double>> unit_roots(uint64_t p) {
  std::vector<std::complex<double>> w(p);
  for (uint64_t k = 0; k < p; ++k) {
    double arg = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(p);
    w[k] = {std::cos(arg), std::sin(arg)};
  }
  return w;
}

// sum over solutions of exp(2 pi i (f + sum h_i x_i)/p); all equations already
// specialized up to `depth`, `offset` carries the linear part so far.
std::complex<double> exp_rec(const std::vector<ModPoly>& eqs, const ModPoly& f,
                             std::span<const uint64_t> h, std::size_t depth, uint64_t offset,
                             uint64_t p, const std::vector<std::complex<double>>& w) {
  std::vector<const ModPoly*> live;
  for (const auto& eq : eqs) {
    if (eq.is_constant()) {
      if (eq.constant_value() != 0) return {0.0, 0.0};
    } else {
      live.push_back(&eq);
    }
  }
  const std::size_t n = h.size();
  if (live.empty() && f.is_constant()) {
    // remaining coordinates are free; each full character sum is 0 unless h_i = 0
    double scale = 1.0;
    for (std::size_t i = depth; i < n; ++i) {
      if (h[i] % p != 0) return {0.0, 0.0};
      scale *= static_cast<double>(p);
    }
    uint64_t idx = (f.constant_value() + offset) % p;
    return scale * w[idx];
  }
  std::complex<double> acc{0.0, 0.0};
  for (uint64_t val = 0; val < p; ++val) {
    std::vector<ModPoly> next;
    next.reserve(live.size());
    for (const ModPoly* eq : live) next.push_back(eq->specialize(depth, val, p));
    ModPoly fnext = f.is_constant() ? f : f.specialize(depth, val, p);
    uint64_t off = (offset + mulmod(h[depth] % p, val, p)) % p;
    acc += exp_rec(next, fnext, h, depth + 1, off, p, w);
  }
  return acc;
}

void collect_points(const std::vector<ModPoly>& eqs, std::size_t depth, std::size_t nvars,
                    uint64_t p, std::vector<uint64_t>& point, std::vector<uint64_t>& out,
                    uint64_t& count) {
  for (const auto& eq : eqs)
    if (eq.is_constant() && eq.constant_value() != 0) return;
  if (depth == nvars) {
    out.insert(out.end(), point.begin(), point.end());
    ++count;
    return;
  }
  std::vector<ModPoly> live;
  for (const auto& eq : eqs)
    if (!eq.is_constant()) live.push_back(eq);
  for (uint64_t val = 0; val < p; ++val) {
    std::vector<ModPoly> next;
    next.reserve(live.size());
    for (const auto& eq : live) next.push_back(eq.specialize(depth, val, p));
    point.push_back(val);
    collect_points(next, depth + 1, nvars, p, point, out, count);
    point.pop_back();
  }
}

}  // namespace

std::complex<double> exp_sum(const Variety& v, const IntPoly& f, std::span<const uint64_t> h,
                             uint64_t p, const ExecPolicy& policy) {
  if (h.size() != v.vars.size())
    throw Error(ErrorCode::Domain, "exp_sum: h dimension mismatch");
  if (f.vars() != v.vars)
    throw Error(ErrorCode::Domain, "exp_sum: f must be expressed over the variety's variables");
  const uint64_t work = pow_saturating(p, v.vars.size());
  if (work > policy.work_cap) throw WorkCapError("exp_sum", work, policy.work_cap);

  auto w = unit_roots(p);
  std::vector<ModPoly> eqs;
  for (const auto& eq : v.equations) eqs.push_back(ModPoly::from_intpoly(eq, p));
  return exp_rec(eqs, ModPoly::from_intpoly(f, p), h, 0, 0, p, w);
}

std::pair<double, double> parseval_check(const Variety& v, uint64_t p, const ExecPolicy& policy) {
  const std::size_t n = v.vars.size();
  const uint64_t work = pow_saturating(p, 2 * n);
  if (work > policy.work_cap) throw WorkCapError("parseval_check", work, policy.work_cap);

  std::vector<ModPoly> eqs;
  for (const auto& eq : v.equations) eqs.push_back(ModPoly::from_intpoly(eq, p));
  std::vector<uint64_t> points, point;
  uint64_t n_affine = 0;
  collect_points(eqs, 0, n, p, point, points, n_affine);

  auto w = unit_roots(p);
  const uint64_t nh = pow_saturating(p, n);
  const uint64_t block = 1024;
  const uint64_t nblocks = (nh + block - 1) / block;
  auto parts = map_blocks<double>(nblocks, policy.resolved_threads(), [&](uint64_t b) {
    double sum = 0.0, comp = 0.0;
    std::vector<uint64_t> hvec(n);
    for (uint64_t idx = b * block; idx < std::min(nh, (b + 1) * block); ++idx) {
      uint64_t rest = idx;
      for (std::size_t i = 0; i < n; ++i) {
        hvec[i] = rest % p;
        rest /= p;
      }
      std::complex<double> s{0.0, 0.0};
      for (uint64_t pt = 0; pt < n_affine; ++pt) {
        uint64_t dot = 0;
        for (std::size_t i = 0; i < n; ++i)
          dot = (dot + mulmod(hvec[i], points[pt * n + i], p)) % p;
        s += w[dot];
      }
      double term = std::norm(s);
      double t = sum + term;
      comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    }
    return sum + comp;
  });
  double lhs = 0.0, comp = 0.0;
  for (double part : parts) {
    double t = lhs + part;
    comp += std::abs(lhs) >= std::abs(part) ? (lhs - t) + part : (part - t) + lhs;
    lhs = t;
  }
  lhs += comp;
  const double rhs = std::pow(static_cast<double>(p), static_cast<double>(n)) *
                     static_cast<double>(n_affine);
  return {lhs, rhs};
}

}  // namespace frobscan

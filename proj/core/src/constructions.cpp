#include "frobscan/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "frobscan/error.hpp"
#include "frobscan/ff.hpp"
#include "frobscan/fixtures.hpp"
#include "frobscan/primes.hpp"

namespace frobscan {

Variety build_cq(uint64_t q) {
  if (q < 3 || q % 2 == 0 || !is_prime_u64(q))
    throw Error(ErrorCode::Domain, "build_cq requires an odd prime q, got " + std::to_string(q));
  Variety v;
  v.vars = {"x", "y"};
  IntPoly eq(v.vars);
  eq.add_term({0, 2}, 1);                             // y^2
  eq.add_term({static_cast<uint32_t>(q), 0}, -1);     // -x^q
  eq.add_term({0, 0}, -1);                            // -1
  v.equations.push_back(std::move(eq));
  v.explicit_bad = {2, q};
  return v;
}

CqReport verify_cq(uint64_t q, const ExecPolicy& policy) {
  Variety cq = build_cq(q);
  UniPoly h("x", [&] {
    std::vector<BigInt> c(q + 1, BigInt(0));
    c[0] = 1;
    c[q] = 1;
    return c;
  }());

  CqReport rep;
  rep.q = q;
  rep.p0 = least_prime_in_ap(q, 1);

  std::vector<uint64_t> primes;
  for_each_prime(3, rep.p0 - 1, [&](uint64_t p) {
    if (p != q) primes.push_back(p);
  });

  ExecPolicy per_prime = policy;
  per_prime.threads = 1;
  auto counts = map_blocks<uint64_t>(primes.size(), policy.resolved_threads(), [&](uint64_t i) {
    return count_hyperelliptic(h, primes[i], per_prime).n_affine;
  });

  rep.checked = primes.size();
  rep.all_below_match = true;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (counts[i] != primes[i]) {
      rep.all_below_match = false;
      if (!rep.first_failure) rep.first_failure = primes[i];
    }
  }
  rep.n_at_p0 = count_hyperelliptic(h, rep.p0, policy).n_affine;
  return rep;
}

namespace {

// affine count of y^2 = f(x) for a u64 coefficient vector, lowest first
uint64_t count_quintic(const std::vector<uint64_t>& c, uint64_t p, const ChiEvaluator& chi) {
  uint64_t n = 0;
  for (uint64_t x = 0; x < p; ++x) {
    uint64_t acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (mulmod(acc, x, p) + *it) % p;
    n += static_cast<uint64_t>(1 + chi(acc));
  }
  return n;
}

bool squarefree_mod_p(const std::vector<uint64_t>& c, uint64_t p) {
  std::vector<BigInt> coeffs(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) coeffs[i] = static_cast<unsigned long>(c[i]);
  return discriminant_mod_p(UniPoly("x", std::move(coeffs)), p) != 0;
}

}  // namespace

UniPoly search_genus2_anomalous(uint64_t p, uint64_t seed, uint64_t max_attempts,
                                const ExecPolicy& policy) {
  if (p < 5 || !is_prime_u64(p))
    throw Error(ErrorCode::Domain,
                "genus-2 search requires a prime p >= 5, got " + std::to_string(p));
  ChiEvaluator chi(p);

  auto qualifies = [&](const std::vector<uint64_t>& c) {
    return count_quintic(c, p, chi) == p && squarefree_mod_p(c, p);
  };
  auto finish = [&](const std::vector<uint64_t>& c) {
    std::vector<BigInt> coeffs(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) coeffs[i] = static_cast<unsigned long>(c[i]);
    return UniPoly("x", std::move(coeffs));
  };

  // deterministic batches: candidates are drawn sequentially from the seeded
  // generator, evaluated in parallel, first success by in-batch index wins
  std::mt19937_64 rng(seed ^ (p * 0x9e3779b97f4a7c15ull));
  std::uniform_int_distribution<uint64_t> dist(0, p - 1);
  const uint64_t batch = 64;
  uint64_t attempts = 0;
  const uint64_t random_phase = max_attempts / 2;
  while (attempts < random_phase) {
    std::vector<std::vector<uint64_t>> candidates;
    for (uint64_t i = 0; i < batch; ++i) {
      std::vector<uint64_t> c(6);
      for (int k = 0; k < 5; ++k) c[k] = dist(rng);
      c[5] = 1;
      candidates.push_back(std::move(c));
    }
    auto ok = map_blocks<uint8_t>(batch, policy.resolved_threads(),
                                  [&](uint64_t i) { return uint8_t(qualifies(candidates[i])); });
    for (uint64_t i = 0; i < batch; ++i)
      if (ok[i]) return finish(candidates[i]);
    attempts += batch;
  }

  // exhaustive fallback in lexicographic order
  std::vector<uint64_t> c(6, 0);
  c[5] = 1;
  for (;;) {
    if (attempts++ >= max_attempts)
      throw WorkCapError("genus-2 search gave up", attempts, max_attempts);
    if (qualifies(c)) return finish(c);
    int k = 0;
    while (k < 5 && ++c[k] == p) c[k++] = 0;
    if (k == 5) break;  // whole space scanned; cannot happen, the target exists
  }
  throw Error(ErrorCode::Internal, "genus-2 search exhausted the space without a hit");
}

UniPoly crt_combine(const std::vector<std::pair<uint64_t, UniPoly>>& pairs) {
  if (pairs.empty()) throw Error(ErrorCode::Domain, "crt_combine needs at least one pair");
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (pairs[i].first == pairs[j].first)
        throw Error(ErrorCode::Domain,
                    "crt_combine: duplicate prime " + std::to_string(pairs[i].first));

  std::vector<std::vector<uint64_t>> reduced;  // per pair, 6 residues
  for (const auto& [p, f] : pairs) {
    if (!is_prime_u64(p)) throw Error(ErrorCode::Domain, "crt_combine: modulus must be prime");
    if (f.degree() != 5 || mod_u64(f.lc(), p) != 1)
      throw Error(ErrorCode::Domain, "crt_combine: every input must be monic of degree 5");
    std::vector<uint64_t> r(6);
    for (int k = 0; k <= 5; ++k) r[k] = mod_u64(f.coeff(k), p);
    reduced.push_back(std::move(r));
  }

  BigInt modulus = 1;
  std::vector<BigInt> coeffs(6, BigInt(0));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const BigInt p(static_cast<unsigned long>(pairs[i].first));
    for (int k = 0; k <= 5; ++k) {
      // x := x + M * ((c - x) * M^{-1} mod p)
      BigInt inv;
      if (mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), p.get_mpz_t()) == 0)
        throw Error(ErrorCode::Internal, "crt moduli not coprime");
      BigInt delta = (BigInt(static_cast<unsigned long>(reduced[i][k])) - coeffs[k]) * inv;
      mpz_mod(delta.get_mpz_t(), delta.get_mpz_t(), p.get_mpz_t());
      coeffs[k] += modulus * delta;
    }
    modulus *= p;
  }
  for (auto& c : coeffs) {
    // symmetric representative in (-M/2, M/2]
    if (BigInt(c * 2) > modulus) c -= modulus;
  }
  return UniPoly("x", std::move(coeffs));
}

Genus2PairReport verify_genus2_pair(uint64_t p_max, const ExecPolicy& policy) {
  if (p_max < 401) throw Error(ErrorCode::Domain, "verify_genus2_pair requires p_max >= 401");
  const UniPoly& c1 = genus2_c1();
  const UniPoly& c2 = genus2_c2();

  // joint bad set: 2 and the primes dividing either discriminant
  BigInt bad_product = BigInt(2) * c1.lc() * c2.lc() * discriminant(c1) * discriminant(c2);
  auto is_good = [&](uint64_t p) { return mod_u64(bad_product, p) != 0; };

  std::vector<uint64_t> primes;
  for_each_prime(3, 400, [&](uint64_t p) { primes.push_back(p); });

  ExecPolicy per_prime = policy;
  per_prime.threads = 1;
  auto pass = map_blocks<uint8_t>(primes.size(), policy.resolved_threads(), [&](uint64_t i) {
    uint64_t p = primes[i];
    return uint8_t(count_hyperelliptic(c1, p, per_prime).n_affine == p ||
                   count_hyperelliptic(c2, p, per_prime).n_affine == p);
  });

  Genus2PairReport rep;
  rep.p_max = p_max;
  rep.all_below_401_pass = true;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_good(primes[i])) continue;
    ++rep.checked;
    if (!pass[i]) {
      rep.all_below_401_pass = false;
      rep.failures_below_401.push_back(primes[i]);
    }
  }

  for_each_prime(401, p_max, [&](uint64_t p) {
    if (rep.first_both_fail) return;
    if (count_hyperelliptic(c1, p, policy).n_affine != p &&
        count_hyperelliptic(c2, p, policy).n_affine != p)
      rep.first_both_fail = p;
  });
  return rep;
}

EllipticSurface::EllipticSurface(BigInt a, UniPoly b, UniPoly c, UniPoly d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ == 0) throw Error(ErrorCode::Domain, "surface: a must be non-zero");
  if (b_.degree() > 1) throw Error(ErrorCode::Domain, "surface: deg b <= 1 required");
  if (c_.degree() > 3) throw Error(ErrorCode::Domain, "surface: deg c <= 3 required");
  if (d_.degree() > 5) throw Error(ErrorCode::Domain, "surface: deg d <= 5 required");
}

uint64_t EllipticSurface::count(uint64_t p, const ExecPolicy& policy) const {
  if (p < 3 || p % 2 == 0)
    throw Error(ErrorCode::Domain, "surface count requires an odd prime");
  if (p > policy.work_cap / p) throw WorkCapError("surface count", p * p, policy.work_cap);
  ChiEvaluator chi(p);
  const uint64_t a = mod_u64(a_, p);

  const uint64_t block = 128;
  const uint64_t nblocks = (p + block - 1) / block;
  auto parts = map_blocks<uint64_t>(nblocks, policy.resolved_threads(), [&](uint64_t blk) {
    uint64_t sum = 0;
    for (uint64_t t = blk * block, end = std::min(p, (blk + 1) * block); t < end; ++t) {
      const uint64_t bt = b_.eval_mod_p(t, p);
      const uint64_t ct = c_.eval_mod_p(t, p);
      const uint64_t dt = d_.eval_mod_p(t, p);
      for (uint64_t x = 0; x < p; ++x) {
        uint64_t v = mulmod(a, x, p);
        v = mulmod((v + bt) % p, x, p);
        v = mulmod((v + ct) % p, x, p);
        v = (v + dt) % p;
        sum += static_cast<uint64_t>(1 + chi(v));
      }
    }
    return sum;
  });
  uint64_t n = 0;
  for (uint64_t s : parts) n += s;
  return n;
}

Variety EllipticSurface::to_variety() const {
  std::string t = "t";
  for (const UniPoly* u : {&b_, &c_, &d_}) {
    if (u->degree() >= 1) {
      t = u->var();
      break;
    }
  }
  Variety v;
  v.vars = {"x", t, "y"};
  IntPoly eq(v.vars);
  eq.add_term({0, 0, 2}, 1);  // y^2
  eq.add_term({3, 0, 0}, -a_);
  auto add_coeffs = [&](const UniPoly& u, uint32_t xdeg) {
    for (std::size_t i = 0; i < u.coeffs().size(); ++i)
      eq.add_term({xdeg, static_cast<uint32_t>(i), 0}, -u.coeff(i));
  };
  add_coeffs(b_, 2);
  add_coeffs(c_, 1);
  add_coeffs(d_, 0);
  v.equations.push_back(std::move(eq));
  return v;
}

EllipticSurface EllipticSurface::from_text(std::string_view text) {
  std::optional<BigInt> a;
  UniPoly b, c, d;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head, rest;
    if (!(ls >> head)) continue;
    std::getline(ls, rest);
    if (head == "a:") {
      a = BigInt(rest);
    } else if (head == "b:") {
      b = parse_unipoly(rest);
    } else if (head == "c:") {
      c = parse_unipoly(rest);
    } else if (head == "d:") {
      d = parse_unipoly(rest);
    } else {
      throw Error(ErrorCode::Parse, "surface file: unknown directive '" + head + "' on line " +
                                        std::to_string(lineno));
    }
  }
  if (!a) throw Error(ErrorCode::Parse, "surface file: missing a: line");
  return EllipticSurface(*a, std::move(b), std::move(c), std::move(d));
}

EllipticSurface EllipticSurface::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open surface file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

DivisibilityReport check_surface_divisibility(const EllipticSurface& s, uint64_t p_max,
                                              const ExecPolicy& policy) {
  std::vector<uint64_t> primes;
  for_each_prime(3, p_max, [&](uint64_t p) { primes.push_back(p); });
  ExecPolicy per_prime = policy;
  per_prime.threads = 1;
  auto rems = map_blocks<uint64_t>(primes.size(), policy.resolved_threads(),
                                   [&](uint64_t i) { return s.count(primes[i], per_prime) % primes[i]; });
  DivisibilityReport rep;
  rep.p_max = p_max;
  rep.checked = primes.size();
  rep.all_divisible = true;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (rems[i] != 0) {
      rep.all_divisible = false;
      rep.violations.push_back(primes[i]);
    }
  }
  return rep;
}

uint64_t hua_sum(uint64_t p, uint64_t c) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
    throw Error(ErrorCode::Domain, "hua_sum requires an odd prime p");
  if (c == 0) throw Error(ErrorCode::Domain, "hua_sum requires c >= 1");
  uint64_t acc = 0;
  for (uint64_t x = 1; x < p; ++x) acc = (acc + powmod(x, c, p)) % p;
  return acc;
}

}  // namespace frobscan

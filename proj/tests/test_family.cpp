#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"

#include "frobscan/bounds.hpp"
#include "frobscan/family.hpp"
#include "frobscan/primes.hpp"

using namespace frobscan;

namespace {

FamilySpec quartic_family(std::vector<int64_t> a_list) {
  return FamilySpec::make(parse_unipoly("t^4 + 1"), std::move(a_list));
}

}  // namespace

TEST_CASE("family spec: validation and the alpha convention") {
  FamilySpec spec = quartic_family({0});
  CHECK(spec.g == 2);
  CHECK(spec.disc_f == 256);
  CHECK(spec.alpha_list() == std::vector<int64_t>{-1});

  FamilySpec via_alpha = FamilySpec::from_alpha(parse_unipoly("t^4 + 1"), {0, 2});
  CHECK(via_alpha.a_list == std::vector<int64_t>{1, 3});

  CHECK_THROWS_AS(FamilySpec::make(parse_unipoly("t^3 + 1"), {}), Error);      // odd degree
  CHECK_THROWS_AS(FamilySpec::make(parse_unipoly("t^2 - 2*t + 1"), {}), Error);  // disc 0
}

TEST_CASE("family members: substitution and bad-prime data") {
  FamilySpec spec = quartic_family({0});
  Variety m0 = family_member(spec, 0);
  CHECK(m0.equations[0] == parse_poly("y^2 - t^5 - t", m0.vars));

  Variety m1 = family_member(spec, 1);
  CHECK(m1.equations[0] == parse_poly("y^2 - (t^4 + 1)*(t - 1)", m1.vars));
  REQUIRE(m1.disc_generator.has_value());
  // disc((t^4+1)(t-1)) = 1024: only 2 is bad for this member
  CHECK(discriminant(*m1.disc_generator) == 1024);
  CHECK(is_bad_prime(m1, 2));
  CHECK_FALSE(is_bad_prime(m1, 3));
  CHECK_FALSE(is_bad_prime(m1, 5));

  // members at different u differ only in the linear factor
  Variety m2 = family_member(spec, 2);
  IntPoly diff = m1.equations[0] - m2.equations[0];
  CHECK(diff == parse_poly("(t^4 + 1)*((t - 2) - (t - 1))", m1.vars));
}

TEST_CASE("compute_dp: empty exclusion list gives the empty set") {
  FamilySpec spec = quartic_family({});
  DpRecord dp = compute_dp(spec, 13);
  CHECK(dp.size == 0);
  CHECK(dp.members.empty());
  CHECK(dp.skipped_bad_u == 0);  // t^4 + 1 has no root mod 13
}

TEST_CASE("compute_dp: excluding every trace keeps every good fiber") {
  FamilySpec spec = [&] {
    // traces lie in [-2g sqrt(p), 2g sqrt(p)]; exclude all of them via a_i = 1 - trace
    std::vector<int64_t> a_list;
    const int64_t band = static_cast<int64_t>(4.0 * std::sqrt(13.0)) + 1;
    for (int64_t trace = -band; trace <= band; ++trace) a_list.push_back(1 - trace);
    return quartic_family(a_list);
  }();
  DpRecord dp = compute_dp(spec, 13);
  CHECK(dp.size + dp.skipped_bad_u == 13);
}

TEST_CASE("compute_dp: members match a brute-force recount at p = 13") {
  FamilySpec spec = quartic_family({0});  // excluded trace 1 - 0 = 1
  DpRecord dp = compute_dp(spec, 13);
  CHECK(dp.size == dp.members.size());
  CHECK(dp.size <= 13);

  std::set<uint64_t> expect;
  uint64_t skipped = 0;
  for (uint64_t u = 0; u < 13; ++u) {
    if (spec.f.eval_mod_p(u, 13) == 0) {
      ++skipped;
      continue;
    }
    Variety member = family_member(spec, static_cast<long>(u));
    uint64_t n = count_affine_bruteforce(member, 13);
    int64_t trace = 13 - static_cast<int64_t>(n);
    if (trace == 1) expect.insert(u);
  }
  CHECK(skipped == dp.skipped_bad_u);
  CHECK(std::set<uint64_t>(dp.members.begin(), dp.members.end()) == expect);
}

TEST_CASE("compute_dp: independent recount at random small primes") {
  std::mt19937_64 rng(1234);
  FamilySpec spec = FamilySpec::make(parse_unipoly("t^4 + t + 1"), {0, 2});
  std::vector<uint64_t> goods;
  for (uint64_t p : primes_up_to(60).primes)
    if (spec.good_prime(p)) goods.push_back(p);
  std::shuffle(goods.begin(), goods.end(), rng);
  goods.resize(3);
  for (uint64_t p : goods) {
    DpRecord dp = compute_dp(spec, p);
    std::set<uint64_t> expect;
    for (uint64_t u = 0; u < p; ++u) {
      if (spec.f.eval_mod_p(u, p) == 0) continue;
      uint64_t n = count_affine_bruteforce(family_member(spec, static_cast<long>(u)), p);
      int64_t trace = static_cast<int64_t>(p) - static_cast<int64_t>(n);
      for (int64_t a : spec.a_list)
        if (trace == 1 - a) expect.insert(u);
    }
    CAPTURE(p);
    CHECK(std::set<uint64_t>(dp.members.begin(), dp.members.end()) == expect);
  }
}

TEST_CASE("compute_dp rejects bad primes for f") {
  FamilySpec spec = quartic_family({0});
  CHECK_THROWS_AS(compute_dp(spec, 2), Error);
  // disc(t^4+1) = 256: odd primes are all good for f itself
  CHECK_NOTHROW(compute_dp(spec, 3));
}

TEST_CASE("Hasse-Weil on scanned fibers, 1000 random (f, u, p)") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int64_t> coeff(-8, 8);
  std::uniform_int_distribution<int> which_g(1, 2);
  auto primes = primes_up_to(300).primes;
  std::uniform_int_distribution<std::size_t> pick(5, primes.size() - 1);
  int done = 0;
  while (done < 1000) {
    int g = which_g(rng);
    std::vector<BigInt> c(2 * g + 1);
    for (auto& x : c) x = BigInt(static_cast<long>(coeff(rng)));
    c.back() = 1;
    UniPoly f("t", c);
    if (discriminant(f) == 0) continue;
    FamilySpec spec = FamilySpec::make(f, {0});
    uint64_t p = primes[pick(rng)];
    if (!spec.good_prime(p)) continue;
    std::uniform_int_distribution<uint64_t> uu(0, p - 1);
    uint64_t u = uu(rng);
    if (spec.f.eval_mod_p(u, p) == 0) continue;
    UniPoly member = spec.f * UniPoly("t", {BigInt(-static_cast<long>(u)), BigInt(1)});
    auto rec = count_hyperelliptic(member, p);
    REQUIRE(rec.trace.has_value());
    CHECK(*rec.trace * *rec.trace <= 4 * g * g * static_cast<int64_t>(p));
    ++done;
  }
}

TEST_CASE("exceptional count: vacuous prime sets and full exclusion") {
  FamilySpec spec = quartic_family({1});
  // no good primes below 3: every u survives
  ExceptionalCount all = exceptional_count(spec, 10, 3.0);
  CHECK(all.count == 21);
  CHECK(all.witnesses.front() == -10);
  CHECK(all.witnesses.back() == 10);

  // excluding every possible trace keeps all u whose fibers stay good
  std::vector<int64_t> everything;
  for (int64_t trace = -60; trace <= 60; ++trace) everything.push_back(1 - trace);
  FamilySpec full = quartic_family(everything);
  ExceptionalCount full_count = exceptional_count(full, 5, 14.0);
  // only fibers with f(u) = 0 mod some scanned p could drop out
  DpRecord dp13 = compute_dp(full, 13);
  CHECK(dp13.size + dp13.skipped_bad_u == 13);
  for (int64_t u = -5; u <= 5; ++u) {
    bool survives =
        std::find(full_count.witnesses.begin(), full_count.witnesses.end(), u) !=
        full_count.witnesses.end();
    bool fiber_ok = true;
    for (uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
      int64_t sp = static_cast<int64_t>(p);
      if (full.f.eval_mod_p(static_cast<uint64_t>(((u % sp) + sp) % sp), p) == 0) fiber_ok = false;
    }
    CHECK(survives == fiber_ok);
  }
}

TEST_CASE("exceptional count equals a direct double loop at small scale") {
  FamilySpec spec = quartic_family({1});  // excluded trace 0
  const uint64_t T = 50;
  const double Q = 20.0;
  ExceptionalCount fast = exceptional_count(spec, T, Q);

  std::vector<int64_t> expect;
  for (int64_t u = -static_cast<int64_t>(T); u <= static_cast<int64_t>(T); ++u) {
    bool ok = true;
    for (uint64_t p : primes_up_to(19).primes) {
      if (!spec.good_prime(p)) continue;
      int64_t sp = static_cast<int64_t>(p);
      uint64_t r = static_cast<uint64_t>(((u % sp) + sp) % sp);
      if (spec.f.eval_mod_p(r, p) == 0) {
        ok = false;
        break;
      }
      uint64_t n = count_affine_bruteforce(family_member(spec, u), p);
      int64_t trace_mod = (static_cast<int64_t>(p) - static_cast<int64_t>(n)) % sp;
      int64_t target = ((0 % sp) + sp) % sp;
      if (((trace_mod + sp) % sp) != target) {
        ok = false;
        break;
      }
    }
    if (ok) expect.push_back(u);
  }
  CHECK(fast.count == expect.size());
  CHECK(fast.witnesses == expect);
}

TEST_CASE("exceptional count: monotone in Q and in T") {
  FamilySpec spec = quartic_family({1, 3});
  uint64_t prev_q = UINT64_MAX;
  for (double q : {3.0, 10.0, 25.0, 60.0}) {
    uint64_t c = exceptional_count(spec, 40, q).count;
    CHECK(c <= prev_q);
    prev_q = c;
  }
  uint64_t prev_t = 0;
  for (uint64_t t : {10ull, 30ull, 90ull}) {
    uint64_t c = exceptional_count(spec, t, 25.0).count;
    CHECK(c >= prev_t);
    prev_t = c;
  }
}

TEST_CASE("divisibility translation: p | (N - alpha) iff trace = -alpha for large p") {
  std::mt19937_64 rng(31415);
  FamilySpec spec = quartic_family({});
  const int64_t g = spec.g;
  auto primes = primes_up_to(2000).primes;
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  std::uniform_int_distribution<int64_t> alpha_pick(-5, 5);
  int done = 0;
  while (done < 500) {
    uint64_t p = primes[pick(rng)];
    int64_t alpha = alpha_pick(rng);
    if (static_cast<int64_t>(p) <= std::max(4 * g * g, std::abs(alpha))) continue;
    if (!spec.good_prime(p)) continue;
    std::uniform_int_distribution<uint64_t> uu(0, p - 1);
    uint64_t u = uu(rng);
    if (spec.f.eval_mod_p(u, p) == 0) continue;
    UniPoly member = spec.f * UniPoly("t", {BigInt(-static_cast<long>(u)), BigInt(1)});
    auto rec = count_hyperelliptic(member, p);
    const int64_t sp = static_cast<int64_t>(p);
    int64_t n_minus_alpha = static_cast<int64_t>(rec.n_affine) - alpha;
    bool divides = ((n_minus_alpha % sp) + sp) % sp == 0;
    CHECK(divides == (*rec.trace == -alpha));
    ++done;
  }
}

TEST_CASE("sieve experiment: feasible run is internally consistent") {
  // T = 3 keeps the theorem's own Q within desk range
  FamilySpec spec = FamilySpec::from_alpha(parse_unipoly("t^4 + 1"), {0});
  SieveExperimentReport rep = sieve_experiment(spec, 3, 1.0);
  CHECK(rep.q_theorem == doctest::Approx(q_bound({2, 1, 1.0, 3.0})));
  CHECK(rep.q_used == rep.q_theorem);
  CHECK(rep.alpha == std::vector<int64_t>{0});
  CHECK(rep.a_list == std::vector<int64_t>{1});
  CHECK(rep.s_empirical == rep.witnesses.size());
  CHECK(rep.theorem_ceiling > 0.0);
  if (rep.larger_sieve) {
    REQUIRE(rep.s_le_bound.has_value());
    CHECK(*rep.s_le_bound == (static_cast<double>(rep.s_empirical) <= *rep.larger_sieve));
    CHECK(static_cast<double>(rep.s_empirical) <= *rep.larger_sieve);
  }

  std::string json = rep.to_json_string();
  for (const char* field :
       {"\"f\"", "\"g\"", "\"alpha\"", "\"T\"", "\"K\"", "\"Q\"", "\"S_empirical\"",
        "\"witnesses\"", "\"larger_sieve_bound\"", "\"theorem_ceiling\""})
    CHECK(json.find(field) != std::string::npos);
}

TEST_CASE("sieve experiment: the theorem's Q is infeasible at T = 1000") {
  // gamma = 24 makes Q_2(1000) around 10^18; without an override this must
  // refuse rather than run for centuries
  FamilySpec spec = FamilySpec::from_alpha(parse_unipoly("t^4 + 1"), {0});
  CHECK_THROWS_AS(sieve_experiment(spec, 1000, 1.0), WorkCapError);

  SieveExperimentReport rep = sieve_experiment(spec, 1000, 1.0, global_policy(), 50.0);
  CHECK(rep.q_used == 50.0);
  CHECK(rep.q_theorem > 1e15);
  if (rep.larger_sieve)
    CHECK(static_cast<double>(rep.s_empirical) <= *rep.larger_sieve);
}

TEST_CASE("sieve experiment: empty exclusion list degenerates to S = 0") {
  FamilySpec spec = quartic_family({});
  SieveExperimentReport rep = sieve_experiment(spec, 3, 1.0);
  CHECK(rep.s_empirical == 0);
  CHECK_FALSE(rep.larger_sieve.has_value());  // every D_p is empty
}

TEST_CASE("dp scans do not depend on the thread count") {
  FamilySpec spec = quartic_family({0, 1});
  ExecPolicy one;
  one.threads = 1;
  ExecPolicy many;
  many.threads = 8;
  DpRecord a = compute_dp(spec, 101, one);
  DpRecord b = compute_dp(spec, 101, many);
  CHECK(a.members == b.members);
  CHECK(a.skipped_bad_u == b.skipped_bad_u);
}

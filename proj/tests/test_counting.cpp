#include <cmath>
#include <random>

#include "doctest.h"

#include "frobscan/constructions.hpp"
#include "frobscan/counting.hpp"
#include "frobscan/fixtures.hpp"
#include "frobscan/primes.hpp"

using namespace frobscan;

namespace {

// test-only oracle: full tuple enumeration through IntPoly::eval_mod_p,
// independent of the engine's specialization machinery
uint64_t naive_count(const Variety& v, uint64_t p) {
  const std::size_t n = v.vars.size();
  uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  uint64_t count = 0;
  std::vector<uint64_t> pt(n);
  for (uint64_t idx = 0; idx < total; ++idx) {
    uint64_t rest = idx;
    for (std::size_t i = 0; i < n; ++i) {
      pt[i] = rest % p;
      rest /= p;
    }
    bool on = true;
    for (const auto& eq : v.equations)
      if (eq.eval_mod_p(pt, p) != 0) {
        on = false;
        break;
      }
    if (on) ++count;
  }
  return count;
}

Variety curve(const std::string& eq_text) {
  Variety v;
  v.vars = {"x", "y"};
  v.equations.push_back(parse_poly(eq_text, v.vars));
  return v;
}

}  // namespace

TEST_CASE("brute force: spec examples") {
  CHECK(count_affine_bruteforce(curve("y^2 - x^3 - x"), 5) == 3);

  Variety inconsistent;
  inconsistent.vars = {"x"};
  inconsistent.equations.push_back(parse_poly("1", inconsistent.vars));
  CHECK(count_affine_bruteforce(inconsistent, 5) == 0);

  Variety line;
  line.vars = {"x"};
  CHECK(count_affine_bruteforce(line, 7) == 7);
}

TEST_CASE("brute force agrees with the naive full-enumeration oracle") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int64_t> coeff(-6, 6);
  std::uniform_int_distribution<uint32_t> exp(0, 3);
  const uint64_t primes[] = {2, 3, 5, 7};
  for (int iter = 0; iter < 40; ++iter) {
    Variety v;
    v.vars = {"x", "y"};
    for (int k = 0; k < 1 + iter % 2; ++k) {
      IntPoly eq(v.vars);
      for (int t = 0; t < 4; ++t)
        eq.add_term({exp(rng), exp(rng)}, BigInt(static_cast<long>(coeff(rng))));
      v.equations.push_back(std::move(eq));
    }
    uint64_t p = primes[iter % 4];
    CAPTURE(iter);
    CHECK(count_affine_bruteforce(v, p) == naive_count(v, p));
  }
}

TEST_CASE("work cap is enforced and reported") {
  Variety v = curve("y^2 - x^3 - x");
  ExecPolicy tight;
  tight.work_cap = 10;
  CHECK_THROWS_AS(count_affine_bruteforce(v, 5, tight), WorkCapError);
  try {
    count_affine_bruteforce(v, 5, tight);
  } catch (const WorkCapError& e) {
    CHECK(e.required() == 25);
  }
}

TEST_CASE("char sum: elliptic curve example matches 5 + sum chi") {
  CHECK(count_affine_charsum(curve("y^2 - x^3 - x"), 5) == 3);
}

TEST_CASE("char sum: bijective power map forces N = p") {
  // gcd(q, p-1) = 1 makes x -> x^q + 1 bijective, so the chi values cancel
  CHECK(count_affine_charsum(curve("y^2 - x^5 - 1"), 7) == 7);   // gcd(5,6)=1
  CHECK(count_affine_charsum(curve("y^2 - x^17 - 1"), 101) == 101);  // gcd(17,100)=1
}

TEST_CASE("char sum: the five-variable threefold fixture at p = 7") {
  CountContext ctx(x1_threefold());
  CHECK(ctx.has_plan());
  CHECK(ctx.count(7, CountMethod::CharSum) == 584);
  CHECK(ctx.count(7, CountMethod::BruteForce) == 584);
}

TEST_CASE("planner: eliminable shapes and refusals") {
  auto plan = plan_charsum(curve("y^2 - x^3 - x"));
  REQUIRE(plan.has_value());
  CHECK(plan->eliminated == 1);
  CHECK(plan->vars == std::vector<std::string>{"x"});
  CHECK(plan->chi_factors.size() == 1);
  CHECK(plan->chi_factors[0] == parse_poly("x^3 + x", {"x"}));
  CHECK(plan->equations.empty());

  // y occurs to the first power: nothing to eliminate
  CHECK_FALSE(plan_charsum(curve("y - x^3")).has_value());
  // y^2 has a non-unit coefficient
  CHECK_FALSE(plan_charsum(curve("2*y^2 - x^3")).has_value());
  // y^2 carries another variable in its term
  CHECK_FALSE(plan_charsum(curve("x*y^2 - x^3")).has_value());
  // y in two equations
  Variety two;
  two.vars = {"x", "y"};
  two.equations.push_back(parse_poly("y^2 - x", two.vars));
  two.equations.push_back(parse_poly("y^2 - x^3", two.vars));
  CHECK_FALSE(plan_charsum(two).has_value());

  CHECK_THROWS_AS(count_affine_charsum(curve("y - x^3"), 5), Error);
  try {
    count_affine_charsum(curve("y - x^3"), 5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoPlan);
  }
}

TEST_CASE("planner: disjoint residual systems multiply fiberwise") {
  // y^2 = f(x) and z^2 = g(t) split into independent components
  Variety v;
  v.vars = {"x", "y", "t", "z"};
  v.equations.push_back(parse_poly("y^2 - x^3 - 1", v.vars));
  v.equations.push_back(parse_poly("z^2 - t^5 - t", v.vars));
  auto plan = plan_charsum(v);
  REQUIRE(plan.has_value());
  CHECK(plan->eliminated == 2);
  for (uint64_t p : {3ull, 5ull, 7ull, 11ull})
    CHECK(count_affine_charsum(v, p) == count_affine_bruteforce(v, p));
}

TEST_CASE("char sum equals brute force on random square-eliminable systems") {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int64_t> coeff(-10, 10);
  std::uniform_int_distribution<int> deg(0, 6);
  for (int iter = 0; iter < 30; ++iter) {
    const bool bivariate = iter % 2 == 0;
    Variety v;
    IntPoly g = [&] {
      if (bivariate) {
        v.vars = {"x", "t", "y"};
        IntPoly r({"x", "t", "y"});
        for (int k = 0; k < 6; ++k)
          r.add_term({static_cast<uint32_t>(deg(rng) / 2), static_cast<uint32_t>(deg(rng) / 2), 0},
                     BigInt(static_cast<long>(coeff(rng))));
        return r;
      }
      v.vars = {"x", "y"};
      IntPoly r({"x", "y"});
      for (int k = 0; k < 6; ++k)
        r.add_term({static_cast<uint32_t>(deg(rng)), 0}, BigInt(static_cast<long>(coeff(rng))));
      return r;
    }();
    IntPoly eq(v.vars);
    std::vector<uint32_t> ysq(v.vars.size(), 0);
    ysq.back() = 2;
    eq.add_term(ysq, 1);
    eq -= g;
    v.equations.push_back(std::move(eq));
    for (uint64_t p : {3ull, 5ull, 13ull, 31ull}) {
      CAPTURE(iter);
      CAPTURE(p);
      CHECK(count_affine_charsum(v, p) == count_affine_bruteforce(v, p));
    }
  }
}

TEST_CASE("hyperelliptic counts: trace and reference values") {
  PointCountRecord r = count_hyperelliptic(parse_unipoly("x^3 + x"), 5);
  CHECK(r.n_affine == 3);
  CHECK(r.trace == 2);  // projective count 4 = p + 1 - trace
  CHECK(r.n_mod_p == 3);
  CHECK(r.good_reduction);  // disc(x^3+x) = -4, so 5 is good

  CHECK(count_hyperelliptic(parse_unipoly("x^17 + 1"), 103).n_affine == 87);
  CHECK(count_hyperelliptic(parse_unipoly("x^457 + 1"), 13711).n_affine == 13255);
}

TEST_CASE("hyperelliptic: model restrictions") {
  CHECK_THROWS_AS(count_hyperelliptic(parse_unipoly("x^4 + 1"), 5), Error);  // even degree
  CHECK_THROWS_AS(count_hyperelliptic(parse_unipoly("x^3 + x"), 2), Error);  // p = 2
  CHECK_THROWS_AS(count_hyperelliptic(parse_unipoly("x"), 7), Error);        // degree 1
}

TEST_CASE("hyperelliptic: good reduction flags follow 2 * lc * disc") {
  UniPoly h = parse_unipoly("x^5 + 5*x^3 + 5*x");  // disc = 50000 = 2^4 * 5^5
  CHECK_FALSE(count_hyperelliptic(h, 5).good_reduction);
  CHECK(count_hyperelliptic(h, 3).good_reduction);
  CHECK(count_hyperelliptic(h, 401).good_reduction);
}

TEST_CASE("hyperelliptic model detection") {
  auto h = hyperelliptic_model(curve("y^2 - x^3 - x"));
  REQUIRE(h.has_value());
  CHECK(*h == parse_unipoly("x^3 + x"));

  CHECK_FALSE(hyperelliptic_model(curve("y^2 - x^2 - 1")).has_value());  // degree 2
  CHECK_FALSE(hyperelliptic_model(curve("y - x^3")).has_value());
  auto flipped = hyperelliptic_model(curve("x^3 + x - y^2"));
  REQUIRE(flipped.has_value());
  CHECK(*flipped == parse_unipoly("x^3 + x"));
}

TEST_CASE("Lang-Weil window: irreducible named curves stay inside (0, 2p)") {
  // 0 < N < 2p for good p; checked on the bundled curves for p <= 10^4
  for (const UniPoly& h : {genus2_c1(), genus2_c2(), parse_unipoly("x^3 + x")}) {
    BigInt bad = BigInt(2) * h.lc() * discriminant(h);
    for (uint64_t p : primes_up_to(10000).primes) {
      if (p == 2 || mod_u64(bad, p) == 0) continue;
      uint64_t n = count_hyperelliptic(h, p).n_affine;
      CHECK(n > 0);
      CHECK(n < 2 * p);
    }
  }
  UniPoly c17 = parse_unipoly("x^17 + 1");
  for (uint64_t p : primes_up_to(2000).primes) {
    if (p == 2 || p == 17) continue;
    uint64_t n = count_hyperelliptic(c17, p).n_affine;
    CHECK(n > 0);
    CHECK(n < 2 * p);
  }
}

TEST_CASE("bad prime rule: 2, explicit set, and the discriminant generator") {
  Variety v = curve("y^2 - x^3 - x");
  v.disc_generator = parse_unipoly("x^3 + x");  // disc -4, lc 1
  CHECK(is_bad_prime(v, 2));
  CHECK_FALSE(is_bad_prime(v, 3));
  CHECK_FALSE(is_bad_prime(v, 5));
  v.explicit_bad.insert(7);
  CHECK(is_bad_prime(v, 7));

  Variety degenerate = curve("y^2 - x^2");
  degenerate.disc_generator = parse_unipoly("x^2");  // repeated root
  CHECK_THROWS_AS(degenerate.validate(), Error);
}

TEST_CASE("variety files: directives, comments and errors") {
  Variety v = Variety::from_text("# comment\nvars: x y\neq: y^2 - x^3 - x\nbad: 11\n"
                                 "disc_of: x^3 + x\n");
  CHECK(v.vars == std::vector<std::string>{"x", "y"});
  CHECK(v.equations.size() == 1);
  CHECK(v.explicit_bad == std::set<uint64_t>{11});
  CHECK(is_bad_prime(v, 11));
  CHECK(count_affine_charsum(v, 5) == 3);

  CHECK_THROWS_AS(Variety::from_text("eq: x\n"), Error);          // missing vars
  CHECK_THROWS_AS(Variety::from_text("vars: x\nfoo: 1\n"), Error);  // unknown directive
  CHECK_THROWS_AS(Variety::from_text("vars: x\neq: z + 1\n"), ParseError);
  CHECK_THROWS_AS(Variety::from_text("vars: x\ndisc_of: t^2 + 1\n"), Error);
}

TEST_CASE("exp_sum: full, trivial, and single-point character sums") {
  Variety line;
  line.vars = {"x"};
  IntPoly zero(line.vars);
  std::vector<uint64_t> h1{1}, h0{0};
  CHECK(std::abs(exp_sum(line, zero, h1, 7)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(exp_sum(line, zero, h0, 7).real() == doctest::Approx(7.0));

  Variety point;
  point.vars = {"x"};
  point.equations.push_back(parse_poly("x", point.vars));  // x = 0
  IntPoly f = parse_poly("x^2 + x", point.vars);           // f(0) = 0
  std::vector<uint64_t> h3{3};
  auto s = exp_sum(point, f, h3, 7);
  CHECK(s.real() == doctest::Approx(1.0));
  CHECK(s.imag() == doctest::Approx(0.0));

  std::vector<uint64_t> wrong{1, 2};
  CHECK_THROWS_AS(exp_sum(line, zero, wrong, 7), Error);
}

TEST_CASE("exp_sum modulus never exceeds the point count") {
  std::mt19937_64 rng(99);
  Variety v = curve("y^2 - x^3 - 2*x - 1");
  IntPoly f = parse_poly("x*y + 3*x", v.vars);
  for (uint64_t p : {5ull, 11ull, 17ull}) {
    uint64_t n = count_affine_bruteforce(v, p);
    std::uniform_int_distribution<uint64_t> pick(0, p - 1);
    for (int k = 0; k < 10; ++k) {
      std::vector<uint64_t> h{pick(rng), pick(rng)};
      CHECK(std::abs(exp_sum(v, f, h, p)) <= static_cast<double>(n) + 1e-9);
    }
  }
}

TEST_CASE("parseval: fixed small varieties") {
  Variety point;
  point.vars = {"x"};
  point.equations.push_back(parse_poly("x", point.vars));
  auto [lhs1, rhs1] = parseval_check(point, 5);
  CHECK(lhs1 == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(rhs1 == doctest::Approx(5.0));

  Variety line;
  line.vars = {"x"};
  auto [lhs2, rhs2] = parseval_check(line, 5);
  CHECK(lhs2 == doctest::Approx(25.0).epsilon(1e-9));
  CHECK(rhs2 == doctest::Approx(25.0));

  auto [lhs3, rhs3] = parseval_check(curve("y^2 - x^3 - x"), 5);
  CHECK(rhs3 == doctest::Approx(75.0));
  CHECK(lhs3 == doctest::Approx(75.0).epsilon(1e-9));
}

TEST_CASE("p = 2: char sums are refused, brute force still works") {
  Variety v = curve("y^2 - x^3 - x");
  CHECK_THROWS_AS(count_affine_charsum(v, 2), Error);
  CHECK(count_affine_bruteforce(v, 2) == 2);  // (0,0) and (1,0)
  CountContext ctx(v);
  CHECK(ctx.count(2, CountMethod::Auto) == 2);  // auto falls back below 3
  CHECK_FALSE(ctx.record(2).good_reduction);
}

TEST_CASE("counts are independent of the thread count") {
  ExecPolicy one;
  one.threads = 1;
  ExecPolicy many;
  many.threads = 5;
  Variety v = x1_threefold();
  CHECK(count_affine_bruteforce(v, 7, one) == count_affine_bruteforce(v, 7, many));
  CHECK(count_affine_charsum(v, 7, one) == count_affine_charsum(v, 7, many));
  UniPoly c17 = parse_unipoly("x^17 + 1");
  CHECK(count_hyperelliptic(c17, 10007, one).n_affine ==
        count_hyperelliptic(c17, 10007, many).n_affine);
}

TEST_CASE("count context records: trace only for hyperelliptic shapes") {
  CountContext ell(curve("y^2 - x^3 - x"));
  PointCountRecord r = ell.record(5);
  CHECK(r.n_affine == 3);
  CHECK(r.trace == 2);

  CountContext x1(x1_threefold());
  PointCountRecord r1 = x1.record(7);
  CHECK(r1.n_affine == 584);
  CHECK_FALSE(r1.trace.has_value());
  CHECK(r1.n_mod_p == 584 % 7);
  CHECK(r1.good_reduction);
}

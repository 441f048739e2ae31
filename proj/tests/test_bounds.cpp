#include <cmath>
#include <random>

#include "doctest.h"

#include "frobscan/bounds.hpp"
#include "frobscan/error.hpp"
#include "frobscan/primes.hpp"

using namespace frobscan;

TEST_CASE("gamma: 4g^2 + 2g + 4") {
  CHECK(sieve_gamma(2) == 24);
  CHECK(sieve_gamma(1) == 10);
  CHECK(sieve_gamma(3) == 46);
  CHECK_THROWS_AS(sieve_gamma(0), Error);
  for (int64_t g = 1; g <= 20; ++g) {
    CHECK(sieve_gamma(g) % 2 == 0);
    CHECK(sieve_gamma(g) >= 10);
  }
}

TEST_CASE("q_bound: closed-form values") {
  // T = e makes 2K log T = 2: value is 2^12 (log 2)^11, about 72.684
  double q1 = q_bound({2, 1, 1.0, std::exp(1.0)});
  CHECK(q1 == doctest::Approx(4096.0 * std::pow(std::log(2.0), 11.0)).epsilon(1e-12));

  // T = e^(e/2) makes the inner log equal 1, killing the second factor
  double q2 = q_bound({2, 1, 1.0, std::exp(std::exp(1.0) / 2.0)});
  CHECK(q2 == doctest::Approx(std::pow(std::exp(1.0), 12.0)).epsilon(1e-10));

  // increasing in T for fixed (g, n, K)
  double prev = 0.0;
  for (double t : {3.0, 10.0, 100.0, 1e4, 1e6}) {
    double q = q_bound({2, 1, 1.0, t});
    CHECK(q > prev);
    prev = q;
  }

  CHECK_THROWS_AS(q_bound({2, 1, 0.2, 2.0}), Error);  // 2K log T <= 1
}

TEST_CASE("delta_ell: exact rationals") {
  CHECK(delta_ell(2, 1, 1) == BigRat(8, 81));
  CHECK(delta_ell(3, 1, 1) == BigRat(27, 128));  // (2/3) * (3/4)^4
  CHECK_THROWS_AS(delta_ell(2, 1, 2), Error);    // needs l > n
  CHECK_THROWS_AS(delta_ell(4, 1, 1), Error);    // l must be prime
}

TEST_CASE("delta_ell: 1 - (2g^2 + g + 1 + n)/l asymptotics at large l") {
  const int64_t g = 1, n = 1;
  const double expect_slope = static_cast<double>(2 * g * g + g + 1 + n);
  BigRat d = delta_ell(1000003, g, n);
  double gap = (1.0 - d.get_d()) * 1000003.0;
  CHECK(gap == doctest::Approx(expect_slope).epsilon(1e-4));
}

TEST_CASE("delta_ell is increasing in l and tends to 1") {
  for (int64_t g : {1, 2}) {
    BigRat prev(0);
    for (uint64_t ell : primes_up_to(97).primes) {
      if (static_cast<int64_t>(ell) <= 1) continue;
      BigRat d = delta_ell(ell, g, 1);
      CHECK(d > prev);
      CHECK(d < BigRat(1));
      prev = d;
    }
  }
  CHECK(delta_ell(1000003, 2, 1).get_d() > 0.99998);
}

TEST_CASE("p-symplectic counts: forced constant coefficient and closed form") {
  CHECK(count_p_symplectic(3, 1, 1, {}) == 3);
  CHECK(count_p_symplectic(5, 2, 2, {}) == 25);
  CHECK(count_p_symplectic(5, 1, 1, {0}) == 4);  // (l - n) l^(g-1)

  for (uint64_t ell : {3ull, 5ull, 7ull, 11ull})
    for (int64_t g : {1, 2})
      for (int64_t p = 1; p < static_cast<int64_t>(ell); ++p)
        CHECK(count_p_symplectic(ell, g, p, {}) ==
              static_cast<uint64_t>(std::pow(static_cast<double>(ell), g)));

  // n distinct excluded residues remove n * l^(g-1) polynomials
  CHECK(count_p_symplectic(7, 2, 3, {0, 1}) == 5 * 7);
  // excluded residues collapse mod l
  CHECK(count_p_symplectic(5, 1, 1, {1, 6}) == 4);

  CHECK_THROWS_AS(count_p_symplectic(5, 1, 5, {}), Error);   // p = 0 mod l
  CHECK_THROWS_AS(count_p_symplectic(6, 1, 1, {}), Error);   // l not prime
  ExecPolicy tight;
  tight.work_cap = 10;
  CHECK_THROWS_AS(count_p_symplectic(11, 2, 1, {}, tight), WorkCapError);
}

TEST_CASE("larger sieve: worked values and the caveat branch") {
  std::map<uint64_t, double> nu_one{{2, 1}, {3, 1}, {5, 1}, {7, 1}};
  auto b1 = larger_sieve_bound(10, 1, nu_one);
  REQUIRE(b1.has_value());
  // sum log p = log 210
  CHECK(*b1 == doctest::Approx(std::log(210.0) / (std::log(210.0) - std::log(2.0)))
                   .epsilon(1e-12));
  CHECK(*b1 == doctest::Approx(1.1489370618588284).epsilon(1e-12));

  // denominator goes non-positive for large T: bound is absent
  CHECK_FALSE(larger_sieve_bound(10, 200, nu_one).has_value());

  std::map<uint64_t, double> nu_p{{2, 2}, {3, 3}, {5, 5}, {7, 7}};
  auto b2 = larger_sieve_bound(10, 1, nu_p);
  REQUIRE(b2.has_value());
  double num = std::log(210.0);
  double den = std::log(2.0) / 2 + std::log(3.0) / 3 + std::log(5.0) / 5 + std::log(7.0) / 7 -
               std::log(2.0);
  CHECK(*b2 == doctest::Approx(num / den).epsilon(1e-12));
  CHECK(*b2 == doctest::Approx(8.631254551024643).epsilon(1e-12));

  std::map<uint64_t, double> missing{{2, 1}, {3, 1}, {5, 1}};
  CHECK_THROWS_AS(larger_sieve_bound(10, 1, missing), Error);
  std::map<uint64_t, double> nonpositive{{2, 1}, {3, 0.0}, {5, 1}, {7, 1}};
  CHECK_THROWS_AS(larger_sieve_bound(10, 1, nonpositive), Error);
}

TEST_CASE("larger sieve bound improves pointwise as nu shrinks") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> nu_val(1.0, 50.0);
  for (int iter = 0; iter < 50; ++iter) {
    std::map<uint64_t, double> nu;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) nu[p] = nu_val(rng);
    auto base = larger_sieve_bound(13, 1, nu);
    if (!base) continue;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
      auto shrunk = nu;
      shrunk[p] *= 0.5;
      auto better = larger_sieve_bound(13, 1, shrunk);
      REQUIRE(better.has_value());  // smaller nu only grows the denominator
      CHECK(*better <= *base + 1e-12);
    }
  }
}

TEST_CASE("check_value1: worked examples and the failing band") {
  CHECK(check_value1({3, 0, 2}));        // max(3,1) >= 2
  CHECK_FALSE(check_value1({1, 0, 2}));  // max(1,1) < 2
  CHECK_THROWS_AS(check_value1({0, 2, 2}), Error);

  // false exactly when both |M1 - b-| and |M1 - b+| fall below b+ - b-
  for (int64_t b_minus = -20; b_minus <= 20; ++b_minus) {
    for (int64_t b_plus = b_minus + 1; b_plus <= 20; ++b_plus) {
      for (int64_t m1 = -100; m1 <= 100; ++m1) {
        bool expect = !(std::abs(m1 - b_minus) < b_plus - b_minus &&
                        std::abs(m1 - b_plus) < b_plus - b_minus);
        CHECK(check_value1({m1, b_minus, b_plus}) == expect);
      }
    }
  }
}

TEST_CASE("curve case: M1 = chi - a, band (0, 2) fails only at a = chi - 1") {
  for (int64_t chi = -5; chi <= 5; ++chi)
    for (int64_t a = -10; a <= 10; ++a)
      CHECK(check_value1({chi - a, 0, 2}) == (a != chi - 1));
}

TEST_CASE("surface criterion: cubic surface example and a failing case") {
  // smooth cubic surface, elliptic boundary curve: b1(Y) = 0, chi_c = 0, a = 0
  // passes through the "<= 0" branch whatever b2 is
  CHECK(surface_value1(0, 7, 1, 0, 0));
  CHECK(surface_value1(0, 3, 1, 0, 0));
  // b1 + chi + a = 1 sits inside the band: 1 <= 0 and 1 >= 17 both fail
  CHECK_FALSE(surface_value1(0, 7, 1, 0, 1));
  CHECK_THROWS_AS(surface_value1(-1, 0, 0, 0, 0), Error);
}

TEST_CASE("surface criterion equals the direct two-inequality test") {
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<int64_t> betti(0, 12), chi(-10, 10), av(-30, 30);
  for (int iter = 0; iter < 1000; ++iter) {
    int64_t b1 = betti(rng), b2 = betti(rng), b2c = betti(rng), ch = chi(rng), a = av(rng);
    int64_t s = b1 + ch + a;
    bool direct = s >= 2 * b2 + b2c + 2 || s <= 0;
    CHECK(surface_value1(b1, b2, b2c, ch, a) == direct);
  }
}

TEST_CASE("threefold criterion: boundary and failing examples") {
  // b1(S) - b0(S) - a = 0 with b2(S) = 0 is the boundary case: true
  CHECK(threefold_value1(3, 0, 0, 0, 0));
  // s = 1 with b2(Y) = 0, b2(S) = 1: both inequalities fail
  CHECK_FALSE(threefold_value1(0, 0, 1, 1, 0));
  CHECK_THROWS_AS(threefold_value1(0, -1, 0, 0, 0), Error);
}

TEST_CASE("threefold criterion equals the direct two-inequality test") {
  // with s = b1(S) - b0(S) - a the assembled criterion is exactly
  // s >= 2 b2(S)  or  s <= -2 (b2(Y) + 1)
  std::mt19937_64 rng(141421);
  std::uniform_int_distribution<int64_t> betti(0, 12), av(-40, 40);
  for (int iter = 0; iter < 1000; ++iter) {
    int64_t b2y = betti(rng), b0s = betti(rng), b1s = betti(rng), b2s = betti(rng), a = av(rng);
    int64_t s = b1s - b0s - a;
    bool direct = s >= 2 * b2s || s <= -2 * (b2y + 1);
    CHECK(threefold_value1(b2y, b0s, b1s, b2s, a) == direct);
  }
}

#include <doctest.h>

#include "nexp/arrangement.hpp"
#include "nexp/errors.hpp"
#include "nexp/map.hpp"
#include "support.hpp"

using namespace nexp;
using testing_support::params;
using testing_support::real;
using testing_support::value;

TEST_CASE("params validation") {
  CHECK_THROWS_AS(params(1, "0.5"), DomainError);
  CHECK_THROWS_AS(params(9, "0"), DomainError);
  CHECK_THROWS_AS(params(9, "2.01"), DomainError);
  CHECK_NOTHROW(params(9, "2"));
  CHECK_NOTHROW(params(50, "-1+sqrt(50)"));
  CHECK_THROWS_AS(params(50, "-1+sqrt(51)"), DomainError);
  const Params p = params(4, "1");
  CHECK(p.left_special());
  CHECK(p.right_hits_alpha());
  CHECK(p.d_max() == 2);
  CHECK(p.d_min() == 1);
}

TEST_CASE("digit") {
  CHECK(digit(params(51, "6"), real("6.5")) == 1);
  CHECK(digit(params(51, "6"), real("6")) == 2);
  CHECK(digit(params(4, "1"), real("1")) == 2);
  CHECK(digit(params(4, "1"), value("1")) == 2);
  // p_i belongs to its left cylinder's digit i
  CHECK(digit(params(51, "6"), value("51/8")) == 2);
  CHECK(digit(params(51, "6"), real("6.375")) == 2);
  CHECK_THROWS_AS(digit(params(51, "6"), real("7.01")), DomainError);
  CHECK_THROWS_AS(digit(params(51, "6"), value("599/100")), DomainError);
}

TEST_CASE("apply_t") {
  const Scalar t = apply_t(params(51, "6"), value("7"));
  REQUIRE(t.is_exact());
  CHECK(*t.exact() == Surd::rational(44, 7));
  CHECK(apply_t(params(51, "6"), real("7")).to_double() == doctest::Approx(6.285714285714));
  CHECK(*apply_t(params(4, "1"), value("1")).exact() == Surd(2));
  CHECK(apply_t(params(4, "1"), real("1")) == 2L);
  CHECK(*apply_t(params(9, "2"), value("2.5")).exact() == Surd::rational(13, 5));
  CHECK(apply_t(params(9, "2"), real("2.5")).to_double() == doctest::Approx(2.6));
}

TEST_CASE("orbit") {
  const auto o = orbit(params(51, "6"), real("6"), 2);
  REQUIRE(o.size() == 3);
  CHECK(o[0] == 6L);
  CHECK(o[1].to_double() == doctest::Approx(6.5));
  CHECK(o[2].to_double() == doctest::Approx(6.846153846153846));

  const auto nine = orbit(params(9, "2"), real("3"), 2);
  CHECK(nine[1] == 2L);
  CHECK(nine[2].to_double() == doctest::Approx(2.5));

  const Surd f2 = fixed_point(51, 2);
  const auto fixed = orbit(params(51, "6", Precision(256)), f2.to_real(Precision(256)), 5);
  for (const auto& x : fixed) CHECK(approx_equal(x.with_precision(Precision(128)), f2.to_real(Precision(128))));

  CHECK_THROWS_AS(orbit(params(9, "2"), real("3"), -1), DomainError);
}

TEST_CASE("expand") {
  // the two-cycle point q = -1+sqrt(7) needs alpha below it, e.g. inside the N=9 gap bracket
  const Params nine = params(9, "1.5943");
  CHECK(expand(nine, Surd::parse("-1+sqrt(7)").to_real(Precision{}), 4).digits == std::vector<long>{3, 2, 3, 2});
  CHECK(expand(params(4, "1"), Surd::parse("-1+sqrt(5)").to_real(Precision{}), 3).digits ==
        std::vector<long>{2, 2, 2});
  // T(6.5) = 6.846..., whose digit is floor(51/6.846... - 6) = 1
  CHECK(expand(params(51, "6"), real("6.5"), 2).digits == std::vector<long>{1, 1});
  CHECK_THROWS_AS(expand(nine, real("2.5"), 0), DomainError);
}

TEST_CASE("evaluate") {
  CHECK(evaluate(51, {2}, real("6.5")) == 6L);
  std::vector<long> digits;
  for (int k = 0; k < 20; ++k) {
    digits.push_back(3);
    digits.push_back(2);
  }
  CHECK(abs(evaluate(9, digits, real("2")) - Surd::parse("-1+sqrt(7)").to_real(Precision{})) < real("1e-10"));
  const Real f = Surd::parse("-1+sqrt(5)").to_real(Precision{});
  CHECK(approx_equal(evaluate(4, {2}, f), f));
  CHECK_THROWS_AS(evaluate(9, {-5}, real("2")), DomainError);
  CHECK_THROWS_AS(evaluate(9, {}, real("2")), DomainError);
}

TEST_CASE("range invariance and digit bounds") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10000; ++k) {
    const Params p = testing_support::random_params(rng, 400);
    const Real a = p.alpha().approx();
    const Real x = testing_support::uniform(rng, a, a + 1);
    const long d = digit(p, x);
    CHECK((d >= p.d_min() && d <= p.d_max()));
    const Real y = apply_t(p, x);
    CHECK((y >= a && y <= a + 1));
  }
}

TEST_CASE("expansiveness on the domain") {
  for (long n = 2; n <= 60; ++n) {
    const Surd top = Surd::sqrt_of(n) - Surd(1);
    const Surd a1 = top + Surd(1);
    CHECK(Surd(n) / (a1 * a1) == Surd(1));
    const Surd below = top - Surd::rational(1, 1000);
    if (below.sign() > 0) CHECK(Surd(n) / ((below + Surd(1)) * (below + Surd(1))) > Surd(1));
  }
}

TEST_CASE("expand and evaluate round trip") {
  std::mt19937_64 rng(5);
  const Real tol = real("1e-20");
  int failures = 0;
  for (int k = 0; k < 10000; ++k) {
    const Params p = testing_support::random_params(rng, 400);
    const Real a = p.alpha().approx();
    const Real x = testing_support::uniform(rng, a, a + 1);
    const ExpansionDigits e = expand(p, x, 40);
    if (!(abs(evaluate(p.n(), e.digits, e.remainder) - x) <= tol)) ++failures;
  }
  CHECK(failures == 0);
}

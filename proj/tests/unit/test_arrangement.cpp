#include <doctest.h>

#include "nexp/arrangement.hpp"
#include "nexp/errors.hpp"
#include "support.hpp"

using namespace nexp;
using testing_support::params;
using testing_support::real;
using testing_support::value;

TEST_CASE("fixed points") {
  CHECK(fixed_point(51, 2) == Surd::parse("-1+2*sqrt(13)"));
  CHECK(fixed_point(51, 2).to_real(Precision{}).to_double() == doctest::Approx(6.21110));
  CHECK(fixed_point(12, 7) == Surd::parse("(sqrt(97)-7)/2"));
  CHECK(fixed_point(12, 7).to_real(Precision{}).to_double() == doctest::Approx(1.42441).epsilon(1e-5));
  CHECK(fixed_point(9, 2) == Surd::parse("-1+sqrt(10)"));
  for (long n = 2; n <= 200; ++n) {
    for (long i = 1; i <= 30; ++i) {
      const Surd f = fixed_point(n, i);
      CHECK(Surd(n) / f - Surd(i) - f == Surd(0));
    }
  }
}

TEST_CASE("discontinuities") {
  CHECK(*discontinuity(params(51, "6"), 2).exact() == Surd::rational(51, 8));
  CHECK(*discontinuity(params(9, "2"), 2).exact() == Surd::rational(9, 4));
  CHECK(*discontinuity(params(4, "1"), 2).exact() == Surd::rational(4, 3));
  CHECK_THROWS_AS(discontinuity(params(51, "6"), 1), DomainError);
  CHECK_THROWS_AS(discontinuity(params(51, "6"), 3), DomainError);
}

TEST_CASE("describe") {
  const Arrangement a = describe(params(51, "6"));
  CHECK(a.num_cylinders() == 2);
  CHECK(a.d_max == 2);
  CHECK(a.d_min == 1);
  CHECK_FALSE(a.cylinders[0].is_full);
  CHECK_FALSE(a.cylinders[1].is_full);
  CHECK(*a.cylinders[0].right.exact() == Surd::rational(51, 8));

  const Arrangement full = describe(params(4, "1"));
  CHECK(full.num_cylinders() == 2);
  CHECK(full.all_full());

  const Arrangement eleven = describe(Params(11, Scalar(fixed_point(11, 6), Precision{})));
  CHECK(eleven.num_cylinders() == 4);
  CHECK(eleven.d_max == 5);
  CHECK(eleven.d_min == 2);
}

TEST_CASE("arrangement invariants on random params") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 300; ++k) {
    const Params p = testing_support::random_params(rng, 300);
    const Arrangement a = describe(p);
    CHECK(a.num_cylinders() >= 2);
    for (long i = a.d_min + 1; i < a.d_max; ++i) CHECK(a.discontinuities.at(i + 1) < a.discontinuities.at(i));
    for (const auto& [i, pi] : a.discontinuities) {
      CHECK(pi > p.alpha());
      CHECK(pi < p.alpha_plus_one());
    }
    for (const auto& c : a.cylinders) {
      const Scalar f(a.fixed_points.at(c.digit), p.precision());
      CHECK(c.left <= f);
      CHECK(f <= c.right);
    }
  }
}

TEST_CASE("full arrangements") {
  const FullParams a = full_params(2, 1);
  CHECK((a.n == 4 && a.alpha == 1 && a.d == 2));
  const FullParams b = full_params(2, 2);
  CHECK((b.n == 12 && b.alpha == 2 && b.d == 3));
  const FullParams c = full_params(3, 1);
  CHECK((c.n == 6 && c.alpha == 1 && c.d == 4));
  const Arrangement three = describe(Params(c.n, Scalar(c.alpha, Precision{})));
  CHECK(three.num_cylinders() == 3);
  CHECK(three.all_full());
  CHECK(three.d_max == 4);
  CHECK(three.d_min == 2);
  CHECK_THROWS_AS(full_params(1, 1), DomainError);
}

TEST_CASE("branch number") {
  CHECK(*branch_number(params(4, "1")).exact() == Surd(2));
  CHECK(*branch_number(params(51, "6")).exact() == Surd::rational(51, 42));
  for (long n : {2L, 5L, 50L, 99L}) {
    const Params p(n, Scalar(Surd::sqrt_of(n) - Surd(1), Precision{}));
    const Surd expected = Surd(1) + Surd(1) / (Surd::sqrt_of(n) - Surd(1));
    CHECK(*branch_number(p).exact() == expected);
    CHECK(*branch_number_by_cylinders(p).exact() == expected);
  }
  std::mt19937_64 rng(23);
  for (int k = 0; k < 1000; ++k) {
    const Params p = testing_support::random_params(rng, 1000);
    CHECK(approx_equal(branch_number(p).approx(), branch_number_by_cylinders(p).approx()));
    CHECK(compare(branch_number(p), 1) > 0);
  }
}

TEST_CASE("branch number decreases in alpha") {
  for (long n : {4L, 12L, 50L, 300L}) {
    const Real top = sqrt(Real(n, Precision{})) - 1;
    Scalar prev(Real(1000000, Precision{}));
    for (int k = 1; k <= 200; ++k) {
      const Params p(n, Scalar(top * k / 200));
      const Scalar b = branch_number(p);
      CHECK(b < prev);
      prev = b;
    }
  }
}

TEST_CASE("alpha and digit from branch number") {
  CHECK(*alpha_of_branch(4, value("2")).exact() == Surd(1));
  const Scalar a50 = alpha_of_branch(50, value("3"));
  CHECK(*a50.exact() == (Surd::sqrt_of(609) / Surd(3) - Surd(1)) / Surd(2));
  CHECK(a50.to_double() == doctest::Approx(3.6129876).epsilon(1e-7));
  CHECK(d_of_branch(4, value("2")) == 2);
  CHECK(d_of_branch(12, value("2")) == 3);
  CHECK(d_of_branch(51, value("51/42")) == 2);
  CHECK_THROWS_AS(alpha_of_branch(50, value("1")), DomainError);
  CHECK_THROWS_AS(alpha_of_branch(50, value("1.01")), DomainError);

  std::mt19937_64 rng(29);
  for (int k = 0; k < 300; ++k) {
    const Params p = testing_support::random_params(rng, 500);
    const Scalar b = branch_number(p);
    CHECK(approx_equal(alpha_of_branch(p.n(), b).approx(), p.alpha().approx()));
    CHECK(d_of_branch(p.n(), b) == p.d_max());
  }
}

TEST_CASE("alpha_star") {
  CHECK(alpha_star(99, 4) == Surd(99) * (Surd::sqrt_of(405) - Surd(5)) / Surd(190));
  CHECK(alpha_star(99, 4).to_real(Precision{}).str(4) == "7.8807");
  CHECK(alpha_star(17, 2) == Surd(17) * (Surd::sqrt_of(69) - Surd(3)) / Surd(30));
  CHECK(alpha_star(17, 2).to_real(Precision{}).str(4) == "3.0071");
  CHECK(alpha_star(49, 3) == Surd(49) * (Surd::sqrt_of(200) - Surd(4)) / Surd(92));
  CHECK(alpha_star(49, 3).to_real(Precision{}).str(3) == "5.402");
  for (long n = 5; n <= 120; ++n) {
    for (long d = 2; d < n && d <= 12; ++d) {
      const Surd closed = Surd(n) * (Surd::sqrt_of(4 * n + (d - 1) * (d - 1)) - Surd(d + 1)) / Surd(2 * (n - d));
      CHECK(alpha_star(n, d) == closed);
    }
  }
  // T(alpha) = f_{d-1} whenever the arrangement is the two-cylinder one
  const Params p(99, Scalar(alpha_star(99, 4), Precision{}));
  CHECK(*apply_t(p, p.alpha()).exact() == fixed_point(99, 3));
}

TEST_CASE("margin functions") {
  CHECK(right_endpoint_slope(4, real("99")).to_double() == doctest::Approx(1.2552).epsilon(4e-5));
  CHECK(fixed_point_margin(2, real("17")).sign() > 0);
  CHECK(fixed_point_margin(2, real("18")).sign() < 0);
  CHECK(right_image_margin(4, real("99")).sign() > 0);

  // direct evaluation at alpha_star against the closed forms
  for (long d = 2; d <= 6; ++d) {
    for (long n = d + 3; n <= 200; n += 7) {
      const Precision prec(256);
      const Real a = alpha_star(n, d).to_real(prec);
      const Real right = n / (a + 1) - (d - 1);
      CHECK(approx_equal(fixed_point_margin(d, Real(n, prec)), fixed_point(n, d).to_real(prec) - right));
      CHECK(approx_equal(right_image_margin(d, Real(n, prec)), right - a));
      CHECK(approx_equal(right_endpoint_slope(d, Real(n, prec)), n / ((a + 1) * (a + 1))));
    }
  }
}

TEST_CASE("largest N in the optimal two-cylinder family") {
  CHECK(max_n_for_fstar(2).max_n == 17);
  CHECK(max_n_for_fstar(2).rounded_up);
  CHECK(max_n_for_fstar(3).max_n == 49);
  CHECK_FALSE(max_n_for_fstar(3).rounded_up);
  CHECK(max_n_for_fstar(4).max_n == 99);
  CHECK(max_n_for_fstar(5).max_n == 165);
  CHECK(in_fstar_family(99, 4));
  CHECK_FALSE(in_fstar_family(100, 4));
  // one of the listed exceptional digits where the estimate rounds up
  CHECK(max_n_for_fstar(9).rounded_up);
}

TEST_CASE("fixed point spacing") {
  const Precision prec(256);
  for (long n = 2; n < 500; ++n) {
    for (long d = 2; d <= 40; ++d) {
      const Real now = fixed_point(n, d - 1).to_real(prec) - fixed_point(n, d).to_real(prec);
      const Real next = fixed_point(n + 1, d - 1).to_real(prec) - fixed_point(n + 1, d).to_real(prec);
      CHECK(now < real("0.5", prec));
      CHECK(next > now);
    }
  }
}

TEST_CASE("full arrangement round trip") {
  for (long m = 2; m <= 5; ++m) {
    for (long k = 1; k <= 10; ++k) {
      const FullParams fp = full_params(m, k);
      const Arrangement a = describe(Params(fp.n, Scalar(fp.alpha, Precision{})));
      CHECK(a.num_cylinders() == m);
      CHECK(a.all_full());
      CHECK(a.d_max == fp.d);
    }
  }
  std::mt19937_64 rng(31);
  int tested = 0;
  while (tested < 1000) {
    const long alpha = std::uniform_int_distribution<long>(1, 30)(rng);
    const long lo = (alpha + 1) * (alpha + 1);
    const long n = std::uniform_int_distribution<long>(lo, lo + 2000)(rng);
    if (n % (alpha * (alpha + 1)) == 0) continue;
    ++tested;
    CHECK_FALSE(describe(Params(n, Scalar(alpha, Precision{}))).all_full());
  }
}

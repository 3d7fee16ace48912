#include "abset/numeric.hpp"

#include "gen.hpp"

#include <doctest.h>

using namespace abset;

TEST_CASE("floor, ceil and frac of negative rationals") {
  CHECK(floor_of(Q(-7, 2)) == -4);
  CHECK(ceil_of(Q(-7, 2)) == -3);
  CHECK(floor_of(Q(6, 3)) == 2);
  CHECK(frac(Q(-1, 3)) == Q(2, 3));
  CHECK(frac(Q(5, 1)) == 0);
}

TEST_CASE("centered_mod1 lands in (-1/2, 1/2]") {
  CHECK(centered_mod1(Q(3, 4)) == Q(-1, 4));
  CHECK(centered_mod1(Q(1, 2)) == Q(1, 2));
  CHECK(centered_mod1(Q(-1, 2)) == Q(1, 2));
  CHECK(centered_mod1(Q(7, 3)) == Q(1, 3));
}

TEST_CASE("integer roots") {
  CHECK(isqrt_ceil(BigInt(0)) == 0);
  CHECK(isqrt_ceil(BigInt(16)) == 4);
  CHECK(isqrt_ceil(BigInt(17)) == 5);
  CHECK(iroot_ceil(Rational(27), 3) == 3);
  CHECK(iroot_ceil(Rational(28), 3) == 4);
  CHECK(iroot_ceil(Q(1, 2), 2) == 1);
  Rational r;
  CHECK(exact_sqrt(Q(9, 16), r));
  CHECK(r == Q(3, 4));
  CHECK_FALSE(exact_sqrt(Rational(2), r));
}

TEST_CASE("sqrt_lower is a lower bound within 2^-bits") {
  gen::SplitMix64 g(11);
  for (int i = 0; i < 200; ++i) {
    Rational q(BigInt(static_cast<unsigned long>(g.range(1, 1000000))),
               BigInt(static_cast<unsigned long>(g.range(1, 1000000))));
    q.canonicalize();
    Rational s = sqrt_lower(q, 64);
    CHECK(s * s <= q);
    Rational up = s + Q(1, 1) / Rational(pow2(64));
    CHECK(up * up > q);
  }
  CHECK(sqrt_lower(Q(1, 4), 8) == Q(1, 2));
}

TEST_CASE("to_decimal rounds half to even") {
  CHECK(to_decimal(Q(1, 8), 2) == "1.2e-01");
  CHECK(to_decimal(Q(3, 8), 2) == "3.8e-01");
  CHECK(to_decimal(Q(1, 3), 5) == "3.3333e-01");
  CHECK(to_decimal(Rational(-2), 3) == "-2.00e+00");
  CHECK(to_decimal(Q(999999, 1000000), 3) == "1.00e+00");
  CHECK(to_decimal(Rational(0), 5) == "0");
  CHECK(to_decimal(Rational(12345678), 1) == "1e+07");
}

TEST_CASE("parse_rational accepts fractions, powers and decimals") {
  CHECK(parse_rational("3/6") == Q(1, 2));
  CHECK(parse_rational("2^-40") == Q(1, 1) / Rational(pow2(40)));
  CHECK(parse_rational("4^3") == 64);
  CHECK(parse_rational("0.125") == Q(1, 8));
  CHECK(parse_rational("-3.5e-4") == Q(-35, 100000));
  CHECK(parse_rational(" 7 ") == 7);
  CHECK_THROWS_AS(parse_rational(""), DomainError);
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), DomainError);
}

TEST_CASE("logarithms of huge rationals keep relative precision") {
  Rational q(BigInt(1), pow2(4000));
  BigFloat l = log_of(q, 128);
  BigFloat expect = log_of(BigInt(2), 192);
  mpfr_mul_si(expect.get(), expect.get(), -4000, MPFR_RNDN);
  BigFloat diff(128);
  mpfr_sub(diff.get(), l.get(), expect.get(), MPFR_RNDN);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
  CHECK(mpfr_cmp_d(diff.get(), 1e-30) < 0);
  CHECK_THROWS_AS(log_of(Rational(0)), DomainError);
}

TEST_CASE("BigFloat copies are independent") {
  BigFloat a = BigFloat::from(Q(1, 3), 64);
  BigFloat b = a;
  mpfr_mul_ui(b.get(), b.get(), 3, MPFR_RNDN);
  CHECK(a.to_double() == doctest::Approx(1.0 / 3));
  CHECK(b.to_double() == doctest::Approx(1.0));
  CHECK(BigFloat::from(Q(5, 4), 64).to_rational() == Q(5, 4));
}

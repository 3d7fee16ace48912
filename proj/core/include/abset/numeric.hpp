#pragma once

// Exact integer/rational helpers and an RAII MPFR float used for logarithms.

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace abset {

using BigInt = mpz_class;
using Rational = mpq_class;

// Thrown for violated preconditions on domain data (bad parameters, out of range
// indices). Usage errors of the CLI are reported separately.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);

// q - floor(q), always in [0, 1).
Rational frac(const Rational& q);

// Representative of q modulo 1 in (-1/2, 1/2].
Rational centered_mod1(const Rational& q);

Rational abs_of(const Rational& q);

BigInt pow2(unsigned long e);
Rational pow_rational(const Rational& base, unsigned long e);

// Smallest integer r with r*r >= n (n >= 0).
BigInt isqrt_ceil(const BigInt& n);

// Smallest integer T with T^k >= q (q > 0, k >= 1).
BigInt iroot_ceil(const Rational& q, unsigned long k);

// Exact square root when q is the square of a rational.
bool exact_sqrt(const Rational& q, Rational& root);

// Dyadic lower bound on sqrt(q) with `bits` fractional bits; exact when q is a
// perfect rational square.
Rational sqrt_lower(const Rational& q, unsigned long bits = 128);

// Scientific-notation rendering of an exact rational with `sig` significant
// digits, rounding half to even. Deterministic across platforms.
std::string to_decimal(const Rational& q, int sig = 20);

std::string to_string(const BigInt& z);

// Parses "p", "p/q", "a^b" or "a^-b" (integer base and exponent), or a plain
// decimal literal such as "0.125" or "-3.5e-4". Throws DomainError.
Rational parse_rational(const std::string& text);

// Move-only wrapper over mpfr_t.
class BigFloat {
public:
  explicit BigFloat(mpfr_prec_t prec = 128);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat from(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
  static BigFloat from(const BigInt& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
  static BigFloat from_double(double d, mpfr_prec_t prec);

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  Rational to_rational() const;
  // Scientific rendering with `sig` significant digits (round-to-nearest-even).
  std::string to_decimal(int sig = 20) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

private:
  mpfr_t value_;
};

// log(q) for q > 0 at the requested working precision.
BigFloat log_of(const Rational& q, mpfr_prec_t prec = 128);
BigFloat log_of(const BigInt& z, mpfr_prec_t prec = 128);
BigFloat divide(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd = MPFR_RNDN);
int compare(const BigFloat& a, const BigFloat& b);
int compare(const BigFloat& a, const Rational& q);

}  // namespace abset

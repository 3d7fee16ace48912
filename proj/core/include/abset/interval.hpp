#pragma once

// Closed intervals with MPFR endpoints and outward rounding, plus the
// tri-state comparison used wherever a real-valued decision is made.

#include "abset/numeric.hpp"

#include <optional>
#include <string>

namespace abset {

enum class Tri { False, True, Unknown };

const char* to_string(Tri t);

class Interval {
public:
  explicit Interval(mpfr_prec_t prec = 256);

  static Interval point(const Rational& q, mpfr_prec_t prec);
  static Interval point(const BigInt& z, mpfr_prec_t prec);
  static Interval hull(const BigFloat& lo, const BigFloat& hi);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  // Upper bound on hi - lo.
  BigFloat width() const;
  bool is_point() const;
  bool contains(const Rational& q) const;
  bool contains_zero() const;

  // Midpoint as an exact dyadic rational.
  Rational midpoint() const;
  std::string to_decimal(int sig = 20) const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator*(const BigInt& k, const Interval& a);

  Interval sqrt() const;
  Interval abs() const;

  // Enclosure of the distance to the nearest integer.
  Interval dist_to_int() const;

  // Enclosure of x mod 1 when the interval does not straddle an integer;
  // otherwise the result is [0,1].
  Interval mod1() const;

private:
  BigFloat lo_, hi_;
};

// Interval-safe ordering. A decision is definite only when the separation
// between the operands exceeds 2^guard_bits times their combined width.
Tri less(const Interval& a, const Interval& b, int guard_bits = 8);
Tri less_equal(const Interval& a, const Interval& b, int guard_bits = 8);

// A real number carried as an exact rational when one is known, always with an
// enclosing interval.
struct Value {
  std::optional<Rational> exact;
  Interval iv;

  static Value of(const Rational& q, mpfr_prec_t prec);
  static Value of(const Interval& iv);

  bool is_exact() const { return exact.has_value(); }
  mpfr_prec_t precision() const { return iv.precision(); }
  std::string to_decimal(int sig = 20) const;
  // Exact value, or the midpoint of the enclosure.
  Rational representative() const;
};

Value operator+(const Value& a, const Value& b);
Value operator-(const Value& a, const Value& b);
Value operator*(const Value& a, const Value& b);
Value operator/(const Value& a, const Value& b);
Value operator*(const BigInt& k, const Value& a);
Value negate(const Value& a);
Value sqrt_of(const Value& a);
Value pow_of(const Value& a, long e);
// Distance to the nearest integer.
Value dist_to_int(const Value& a);
// Representative of a mod 1 in [0,1).
Value mod1(const Value& a);

Tri less(const Value& a, const Value& b, int guard_bits = 8);
Tri less_equal(const Value& a, const Value& b, int guard_bits = 8);
bool definitely_equal(const Value& a, const Value& b);

// Lower and upper enclosure of a^e for a > 0 and rational e = p/q (q > 0).
Interval pow_rational_exponent(const Interval& a, const Rational& e);

}  // namespace abset

#include "abset/interval.hpp"

#include <algorithm>

namespace abset {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval Interval::point(const Rational& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::point(const BigInt& z, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::hull(const BigFloat& lo, const BigFloat& hi) {
  Interval r(std::max(lo.precision(), hi.precision()));
  mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
  if (mpfr_cmp(r.lo_.get(), r.hi_.get()) > 0) mpfr_swap(r.lo_.get(), r.hi_.get());
  return r;
}

BigFloat Interval::width() const {
  BigFloat w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

bool Interval::is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool Interval::contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

Rational Interval::midpoint() const {
  Rational m = (lo_.to_rational() + hi_.to_rational()) / 2;
  m.canonicalize();
  return m;
}

std::string Interval::to_decimal(int sig) const {
  BigFloat m(precision() + 2);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_decimal(sig);
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  Interval r(p);
  BigFloat lo(p), hi(p), t(p);
  bool first = true;
  for (mpfr_srcptr x : {a.lo_.get(), a.hi_.get()}) {
    for (mpfr_srcptr y : {b.lo_.get(), b.hi_.get()}) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  r.lo_ = lo;
  r.hi_ = hi;
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("interval division by an interval containing 0");
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  Interval inv(p);
  mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
  mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
  return a * inv;
}

Interval operator*(const BigInt& k, const Interval& a) {
  Interval r(a.precision());
  if (k >= 0) {
    mpfr_mul_z(r.lo_.get(), a.lo_.get(), k.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_.get(), a.hi_.get(), k.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(r.lo_.get(), a.hi_.get(), k.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_.get(), a.lo_.get(), k.get_mpz_t(), MPFR_RNDU);
  }
  return r;
}

Interval Interval::sqrt() const {
  if (lo_.sign() < 0) throw DomainError("interval sqrt of a negative value");
  Interval r(precision());
  mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  if (lo_.sign() >= 0) return *this;
  if (hi_.sign() <= 0) return -*this;
  Interval r(precision());
  mpfr_set_zero(r.lo_.get(), 1);
  if (mpfr_cmpabs(lo_.get(), hi_.get()) > 0) {
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  } else {
    mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
  }
  return r;
}

Interval Interval::dist_to_int() const {
  mpfr_prec_t p = precision();
  Interval r(p);
  BigFloat w = width();
  if (mpfr_cmp_d(w.get(), 0.25) >= 0) {
    mpfr_set_zero(r.lo_.get(), 1);
    mpfr_set_d(r.hi_.get(), 0.5, MPFR_RNDU);
    return r;
  }
  // The distance is 1-Lipschitz; enclose it at lo and widen by w.
  BigFloat fl(p), f(p), g_lo(p), g_hi(p), d_lo(p), d_hi(p);
  mpfr_floor(fl.get(), lo_.get());
  mpfr_sub(f.get(), lo_.get(), fl.get(), MPFR_RNDN);  // exact: same exponent range
  mpfr_ui_sub(g_lo.get(), 1, f.get(), MPFR_RNDD);
  mpfr_ui_sub(g_hi.get(), 1, f.get(), MPFR_RNDU);
  mpfr_min(d_lo.get(), f.get(), g_lo.get(), MPFR_RNDD);
  mpfr_min(d_hi.get(), f.get(), g_hi.get(), MPFR_RNDU);
  mpfr_sub(r.lo_.get(), d_lo.get(), w.get(), MPFR_RNDD);
  if (r.lo_.sign() < 0) mpfr_set_zero(r.lo_.get(), 1);
  mpfr_add(r.hi_.get(), d_hi.get(), w.get(), MPFR_RNDU);
  if (mpfr_cmp_d(r.hi_.get(), 0.5) > 0) mpfr_set_d(r.hi_.get(), 0.5, MPFR_RNDU);
  return r;
}

Interval Interval::mod1() const {
  mpfr_prec_t p = precision();
  BigFloat fa(p), fb(p);
  mpfr_floor(fa.get(), lo_.get());
  mpfr_floor(fb.get(), hi_.get());
  Interval r(p);
  if (!mpfr_equal_p(fa.get(), fb.get())) {
    mpfr_set_zero(r.lo_.get(), 1);
    mpfr_set_ui(r.hi_.get(), 1, MPFR_RNDU);
    return r;
  }
  mpfr_sub(r.lo_.get(), lo_.get(), fa.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), hi_.get(), fa.get(), MPFR_RNDU);
  return r;
}

namespace {

// Returns the guarded separation test b.lo - a.hi > 2^g (wa + wb).
bool separated_below(const Interval& a, const Interval& b, int guard_bits) {
  mpfr_prec_t p = std::max(a.precision(), b.precision()) + 16;
  BigFloat gap(p), w(p), wa = a.width(), wb = b.width();
  mpfr_sub(gap.get(), b.lo().get(), a.hi().get(), MPFR_RNDD);
  if (gap.sign() <= 0) return false;
  mpfr_add(w.get(), wa.get(), wb.get(), MPFR_RNDU);
  mpfr_mul_2si(w.get(), w.get(), guard_bits, MPFR_RNDU);
  return mpfr_cmp(gap.get(), w.get()) > 0;
}

}  // namespace

Tri less(const Interval& a, const Interval& b, int guard_bits) {
  if (a.is_point() && b.is_point()) {
    return mpfr_cmp(a.lo().get(), b.lo().get()) < 0 ? Tri::True : Tri::False;
  }
  if (separated_below(a, b, guard_bits)) return Tri::True;
  if (separated_below(b, a, guard_bits)) return Tri::False;
  return Tri::Unknown;
}

Tri less_equal(const Interval& a, const Interval& b, int guard_bits) {
  if (a.is_point() && b.is_point()) {
    return mpfr_cmp(a.lo().get(), b.lo().get()) <= 0 ? Tri::True : Tri::False;
  }
  if (separated_below(a, b, guard_bits)) return Tri::True;
  if (separated_below(b, a, guard_bits)) return Tri::False;
  return Tri::Unknown;
}

Value Value::of(const Rational& q, mpfr_prec_t prec) { return Value{q, Interval::point(q, prec)}; }

Value Value::of(const Interval& iv) { return Value{std::nullopt, iv}; }

std::string Value::to_decimal(int sig) const {
  if (exact) return abset::to_decimal(*exact, sig);
  return iv.to_decimal(sig);
}

Rational Value::representative() const { return exact ? *exact : iv.midpoint(); }

namespace {

mpfr_prec_t prec_of(const Value& a, const Value& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Value operator+(const Value& a, const Value& b) {
  if (a.exact && b.exact) return Value::of(Rational(*a.exact + *b.exact), prec_of(a, b));
  return Value::of(a.iv + b.iv);
}

Value operator-(const Value& a, const Value& b) {
  if (a.exact && b.exact) return Value::of(Rational(*a.exact - *b.exact), prec_of(a, b));
  return Value::of(a.iv - b.iv);
}

Value operator*(const Value& a, const Value& b) {
  if (a.exact && b.exact) return Value::of(Rational(*a.exact * *b.exact), prec_of(a, b));
  return Value::of(a.iv * b.iv);
}

Value operator/(const Value& a, const Value& b) {
  if (b.exact && *b.exact == 0) throw DomainError("division by zero");
  if (a.exact && b.exact) return Value::of(Rational(*a.exact / *b.exact), prec_of(a, b));
  return Value::of(a.iv / b.iv);
}

Value operator*(const BigInt& k, const Value& a) {
  if (a.exact) return Value::of(Rational(Rational(k) * *a.exact), a.precision());
  return Value::of(k * a.iv);
}

Value negate(const Value& a) {
  if (a.exact) return Value::of(Rational(-*a.exact), a.precision());
  return Value::of(-a.iv);
}

Value sqrt_of(const Value& a) {
  if (a.exact) {
    if (*a.exact < 0) throw DomainError("sqrt of a negative value");
    Rational root;
    if (exact_sqrt(*a.exact, root)) return Value::of(root, a.precision());
  }
  return Value::of(a.iv.sqrt());
}

Value pow_of(const Value& a, long e) {
  if (e < 0) return Value::of(Rational(1), a.precision()) / pow_of(a, -e);
  Value r = Value::of(Rational(1), a.precision());
  Value b = a;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e > 0) b = b * b;
  }
  return r;
}

Value dist_to_int(const Value& a) {
  if (a.exact) return Value::of(abs_of(centered_mod1(*a.exact)), a.precision());
  return Value::of(a.iv.dist_to_int());
}

Value mod1(const Value& a) {
  if (a.exact) return Value::of(frac(*a.exact), a.precision());
  return Value::of(a.iv.mod1());
}

Tri less(const Value& a, const Value& b, int guard_bits) {
  if (a.exact && b.exact) return *a.exact < *b.exact ? Tri::True : Tri::False;
  return less(a.iv, b.iv, guard_bits);
}

Tri less_equal(const Value& a, const Value& b, int guard_bits) {
  if (a.exact && b.exact) return *a.exact <= *b.exact ? Tri::True : Tri::False;
  return less_equal(a.iv, b.iv, guard_bits);
}

bool definitely_equal(const Value& a, const Value& b) {
  if (a.exact && b.exact) return *a.exact == *b.exact;
  return false;
}

Interval pow_rational_exponent(const Interval& a, const Rational& e) {
  if (a.lo().sign() <= 0) throw DomainError("pow of a non-positive interval");
  mpfr_prec_t p = a.precision();
  Interval ev = Interval::point(e, p + 32);
  BigFloat lo(p), hi(p), t(p);
  bool first = true;
  for (mpfr_srcptr x : {a.lo().get(), a.hi().get()}) {
    for (mpfr_srcptr y : {ev.lo().get(), ev.hi().get()}) {
      mpfr_pow(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_pow(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return Interval::hull(lo, hi);
}

}  // namespace abset

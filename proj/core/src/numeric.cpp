#include "abset/numeric.hpp"

#include <cctype>
#include <cstdlib>
#include <algorithm>
#include <memory>
#include <stdexcept>

namespace abset {

BigInt floor_of(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt ceil_of(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac(const Rational& q) {
  BigInt rem;
  mpz_fdiv_r(rem.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational out(rem, q.get_den());
  out.canonicalize();
  return out;
}

Rational centered_mod1(const Rational& q) {
  Rational f = frac(q);
  if (f > Rational(1, 2)) f -= 1;
  return f;
}

Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

Rational pow_rational(const Rational& base, unsigned long e) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

BigInt isqrt_ceil(const BigInt& n) {
  if (n < 0) throw DomainError("isqrt_ceil: negative argument");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  if (r * r < n) r += 1;
  return r;
}

BigInt iroot_ceil(const Rational& q, unsigned long k) {
  if (q <= 0 || k == 0) throw DomainError("iroot_ceil: need q > 0 and k >= 1");
  // T^k >= p/d  <=>  T^k * d >= p.
  BigInt fl = floor_of(q);
  BigInt t;
  if (fl > 0) {
    mpz_root(t.get_mpz_t(), fl.get_mpz_t(), k);
  } else {
    t = 0;
  }
  auto ok = [&](const BigInt& cand) {
    BigInt pw;
    mpz_pow_ui(pw.get_mpz_t(), cand.get_mpz_t(), k);
    return pw * q.get_den() >= q.get_num();
  };
  while (!ok(t)) t += 1;
  while (t > 0 && ok(t - 1)) t -= 1;
  return t;
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 ||
      mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
    return false;
  }
  BigInt a, b;
  mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(a, b);
  root.canonicalize();
  return true;
}

Rational sqrt_lower(const Rational& q, unsigned long bits) {
  Rational exact;
  if (exact_sqrt(q, exact)) return exact;
  // floor(sqrt(q * 4^bits)) / 2^bits
  Rational scaled = q * Rational(pow2(2 * bits));
  BigInt fl = floor_of(scaled);
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), fl.get_mpz_t());
  Rational out(r, pow2(bits));
  out.canonicalize();
  return out;
}

std::string to_string(const BigInt& z) { return z.get_str(10); }

namespace {

BigInt pow10(long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

// Round-half-even of a non-negative rational to an integer.
BigInt round_half_even(const Rational& q) {
  BigInt fl = floor_of(q);
  Rational rem = q - Rational(fl);
  int c = cmp(rem, Rational(1, 2));
  if (c > 0 || (c == 0 && mpz_odd_p(fl.get_mpz_t()) != 0)) fl += 1;
  return fl;
}

}  // namespace

std::string to_decimal(const Rational& q, int sig) {
  if (sig < 1) sig = 1;
  if (q == 0) return "0";
  Rational a = abs_of(q);
  // Estimate the decimal exponent from bit sizes, then correct it.
  long bits_num = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 2));
  long bits_den = static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 2));
  long e = static_cast<long>((bits_num - bits_den) * 0.30102999566398120);
  auto scale = [](long ex) {
    return ex >= 0 ? Rational(pow10(ex)) : Rational(BigInt(1), pow10(-ex));
  };
  while (a >= scale(e + 1)) ++e;
  while (a < scale(e)) --e;
  BigInt mant = round_half_even(a * scale(sig - 1 - e));
  if (mant >= pow10(sig)) {
    ++e;
    mant = round_half_even(a * scale(sig - 1 - e));
  }
  std::string digits = mant.get_str(10);
  std::string out = q < 0 ? "-" : "";
  out += digits.substr(0, 1);
  if (digits.size() > 1) {
    out += ".";
    out += digits.substr(1);
  }
  out += "e";
  out += e < 0 ? "-" : "+";
  std::string ex = std::to_string(e < 0 ? -e : e);
  if (ex.size() < 2) ex = "0" + ex;
  out += ex;
  return out;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw DomainError("empty rational literal");
  auto parse_int = [&](const std::string& part) {
    BigInt z;
    if (part.empty() || z.set_str(part, 10) != 0) {
      throw DomainError("malformed integer '" + part + "' in '" + text + "'");
    }
    return z;
  };
  if (auto caret = s.find('^'); caret != std::string::npos) {
    BigInt base = parse_int(s.substr(0, caret));
    std::string ex = s.substr(caret + 1);
    bool neg = !ex.empty() && ex[0] == '-';
    BigInt e = parse_int(neg ? ex.substr(1) : ex);
    if (!e.fits_ulong_p()) throw DomainError("exponent too large in '" + text + "'");
    BigInt pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), e.get_ui());
    if (neg) {
      if (pw == 0) throw DomainError("division by zero in '" + text + "'");
      Rational out(BigInt(1), pw);
      out.canonicalize();
      return out;
    }
    return Rational(pw);
  }
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    Rational out(num, den);
    out.canonicalize();
    return out;
  }
  // Decimal literal: [-]digits[.digits][e[+-]digits]
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '-' || s[pos] == '+') {
    neg = s[pos] == '-';
    ++pos;
  }
  std::string intpart, fracpart;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) intpart += s[pos++];
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) fracpart += s[pos++];
  }
  long ex = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    std::string es;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) es += s[pos++];
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) es += s[pos++];
    if (es.empty() || es == "-" || es == "+") throw DomainError("malformed exponent in '" + text + "'");
    ex = std::strtol(es.c_str(), nullptr, 10);
  }
  if (pos != s.size() || (intpart.empty() && fracpart.empty())) {
    throw DomainError("malformed number '" + text + "'");
  }
  BigInt mant = parse_int(intpart + fracpart);
  ex -= static_cast<long>(fracpart.size());
  Rational out = ex >= 0 ? Rational(mant * pow10(ex)) : Rational(mant, pow10(-ex));
  out.canonicalize();
  return neg ? Rational(-out) : out;
}

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::from(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  BigFloat f(prec);
  mpfr_set_q(f.value_, q.get_mpq_t(), rnd);
  return f;
}

BigFloat BigFloat::from(const BigInt& z, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  BigFloat f(prec);
  mpfr_set_z(f.value_, z.get_mpz_t(), rnd);
  return f;
}

BigFloat BigFloat::from_double(double d, mpfr_prec_t prec) {
  BigFloat f(prec);
  mpfr_set_d(f.value_, d, MPFR_RNDN);
  return f;
}

Rational BigFloat::to_rational() const {
  if (!mpfr_number_p(value_)) throw DomainError("BigFloat::to_rational on non-finite value");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

std::string BigFloat::to_decimal(int sig) const {
  if (mpfr_zero_p(value_)) return "0";
  if (!mpfr_number_p(value_)) return mpfr_nan_p(value_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(sig), value_, MPFR_RNDN);
  std::unique_ptr<char, void (*)(char*)> guard(raw, [](char* p) { mpfr_free_str(p); });
  std::string digits(raw);
  std::string out;
  if (!digits.empty() && digits[0] == '-') {
    out = "-";
    digits.erase(0, 1);
  }
  long e = static_cast<long>(exp10) - 1;
  out += digits.substr(0, 1);
  if (digits.size() > 1) {
    out += ".";
    out += digits.substr(1);
  }
  out += "e";
  out += e < 0 ? "-" : "+";
  std::string ex = std::to_string(e < 0 ? -e : e);
  if (ex.size() < 2) ex = "0" + ex;
  out += ex;
  return out;
}

BigFloat log_of(const Rational& q, mpfr_prec_t prec) {
  if (q <= 0) throw DomainError("log of non-positive value");
  // log(num) - log(den) keeps full relative precision for huge operands.
  BigFloat a = log_of(BigInt(q.get_num()), prec + 32);
  BigFloat b = log_of(BigInt(q.get_den()), prec + 32);
  BigFloat out(prec);
  mpfr_sub(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}

BigFloat log_of(const BigInt& z, mpfr_prec_t prec) {
  if (z <= 0) throw DomainError("log of non-positive value");
  BigFloat m = BigFloat::from(z, prec + 32);
  BigFloat out(prec);
  mpfr_log(out.get(), m.get(), MPFR_RNDN);
  return out;
}

BigFloat divide(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
  BigFloat out(std::max(a.precision(), b.precision()));
  mpfr_div(out.get(), a.get(), b.get(), rnd);
  return out;
}

int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.get(), b.get()); }

int compare(const BigFloat& a, const Rational& q) { return mpfr_cmp_q(a.get(), q.get_mpq_t()); }

}  // namespace abset

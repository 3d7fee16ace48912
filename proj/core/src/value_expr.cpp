#include "abset/value_expr.hpp"

#include <cctype>

namespace abset {

namespace {

class Parser {
public:
  Parser(const std::string& text, mpfr_prec_t prec) : s_(text), prec_(prec) {}

  Value run() {
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

private:
  const std::string& s_;
  mpfr_prec_t prec_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError(what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        Value d = unary();
        if ((d.exact && *d.exact == 0) || (!d.exact && d.iv.contains_zero())) fail("division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (eat('-')) return negate(unary());
    if (eat('+')) return unary();
    return power();
  }

  Value power() {
    Value base = primary();
    if (!eat('^')) return base;
    Value e = unary();
    if (!e.exact || e.exact->get_den() != 1 || !e.exact->get_num().fits_slong_p()) fail("exponent must be an integer");
    long k = e.exact->get_num().get_si();
    if (k < 0 && base.exact && *base.exact == 0) fail("division by zero");
    return pow_of(base, k);
  }

  Value primary() {
    skip();
    if (eat('(')) {
      Value v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (s_.compare(pos_, 4, "sqrt") == 0) {
      pos_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      Value v = expr();
      if (!eat(')')) fail("expected ')'");
      if (v.exact ? *v.exact < 0 : v.iv.hi().sign() < 0) fail("sqrt of a negative value");
      return sqrt_of(v);
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    if (start == pos_) fail("expected a number");
    return Value::of(parse_rational(s_.substr(start, pos_ - start)), prec_);
  }
};

}  // namespace

Value parse_value(const std::string& text, mpfr_prec_t prec) { return Parser(text, prec).run(); }

}  // namespace abset

#include "abset/word.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace abset::words {

struct WordExpr::Node {
  Kind kind = Kind::Empty;
  // Concat children, or the power base in a. Null until set, so building a
  // Node never constructs another one.
  WordExpr a{std::shared_ptr<const Node>()}, b{std::shared_ptr<const Node>()};
  BigInt k = 0;   // power exponent
  CountVector counts;
  BigInt length = 0;
  std::size_t depth = 0;
};

std::pair<Rational, Rational> frequencies(const CountVector& c) {
  BigInt n = c.total();
  if (n == 0) return {Rational(0), Rational(0)};
  Rational fx(c.x, n), fy(c.y, n);
  fx.canonicalize();
  fy.canonicalize();
  return {fx, fy};
}

WordExpr::WordExpr() {
  static const auto empty = [] {
    auto n = std::make_shared<Node>();
    return std::shared_ptr<const Node>(n);
  }();
  node_ = empty;
}

WordExpr WordExpr::x() {
  static const auto nx = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::X;
    n->counts = {1, 0};
    n->length = 1;
    n->depth = 1;
    return std::shared_ptr<const Node>(n);
  }();
  return WordExpr(nx);
}

WordExpr WordExpr::y() {
  static const auto ny = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Y;
    n->counts = {0, 1};
    n->length = 1;
    n->depth = 1;
    return std::shared_ptr<const Node>(n);
  }();
  return WordExpr(ny);
}

WordExpr WordExpr::concat(const WordExpr& a, const WordExpr& b) {
  if (a.length() == 0) return b;
  if (b.length() == 0) return a;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Concat;
  n->a = a;
  n->b = b;
  n->counts = a.counts() + b.counts();
  n->length = a.length() + b.length();
  n->depth = 1 + std::max(a.depth(), b.depth());
  return WordExpr(std::shared_ptr<const Node>(n));
}

WordExpr WordExpr::concat(const std::vector<WordExpr>& parts) {
  WordExpr out;
  for (const auto& p : parts) out = concat(out, p);
  return out;
}

WordExpr WordExpr::power(const WordExpr& base, const BigInt& k) {
  if (k < 0) throw DomainError("negative word exponent");
  if (k == 0 || base.length() == 0) return WordExpr();
  if (k == 1) return base;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->a = base;
  n->k = k;
  n->counts = k * base.counts();
  n->length = k * base.length();
  n->depth = 1 + base.depth();
  return WordExpr(std::shared_ptr<const Node>(n));
}

WordExpr WordExpr::block(const BigInt& a, const BigInt& b) { return concat(power(x(), a), power(y(), b)); }

WordExpr::Kind WordExpr::kind() const { return node_->kind; }
const WordExpr& WordExpr::left() const { return node_->a; }
const WordExpr& WordExpr::right() const { return node_->b; }
const WordExpr& WordExpr::base() const { return node_->a; }
const BigInt& WordExpr::exponent() const { return node_->k; }
const CountVector& WordExpr::counts() const { return node_->counts; }
const BigInt& WordExpr::length() const { return node_->length; }
std::size_t WordExpr::depth() const { return node_->depth; }

std::size_t WordExpr::node_count() const {
  std::unordered_set<const void*> seen;
  std::vector<const WordExpr*> stack{this};
  while (!stack.empty()) {
    const WordExpr* w = stack.back();
    stack.pop_back();
    if (!seen.insert(w->node_.get()).second) continue;
    if (w->kind() == Kind::Concat) {
      stack.push_back(&w->left());
      stack.push_back(&w->right());
    } else if (w->kind() == Kind::Power) {
      stack.push_back(&w->base());
    }
  }
  return seen.size();
}

CountVector prefix_counts(const WordExpr& w, const BigInt& j) {
  if (j < 0 || j > w.length()) throw DomainError("prefix_counts: index out of range");
  CountVector acc;
  const WordExpr* cur = &w;
  BigInt rem = j;
  while (rem > 0) {
    if (rem == cur->length()) {
      acc = acc + cur->counts();
      break;
    }
    switch (cur->kind()) {
      case WordExpr::Kind::Concat: {
        const BigInt& ll = cur->left().length();
        if (rem <= ll) {
          cur = &cur->left();
        } else {
          acc = acc + cur->left().counts();
          rem -= ll;
          cur = &cur->right();
        }
        break;
      }
      case WordExpr::Kind::Power: {
        const WordExpr& b = cur->base();
        BigInt q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.get_mpz_t(), b.length().get_mpz_t());
        acc = acc + q * b.counts();
        rem = r;
        cur = &b;
        break;
      }
      default:
        // Atoms have length 1 and are handled by the rem == length branch.
        throw DomainError("prefix_counts: corrupt word");
    }
  }
  return acc;
}

char letter_at(const WordExpr& w, const BigInt& j) {
  if (j < 1 || j > w.length()) throw DomainError("letter_at: index out of range");
  CountVector before = prefix_counts(w, j - 1);
  CountVector upto = prefix_counts(w, j);
  return upto.x != before.x ? 'x' : 'y';
}

Rational evaluate_end(const WordExpr& w, const Rational& alpha, const Rational& beta) {
  return frac(w.counts().dot(alpha, beta));
}

std::vector<Rational> OrbitSample::points() const {
  std::vector<Rational> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.point);
  return out;
}

OrbitSample orbit_points(const WordExpr& w, const Rational& alpha, const Rational& beta,
                         std::vector<BigInt> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  OrbitSample out;
  out.entries.reserve(indices.size());
  for (const auto& n : indices) {
    if (n < 0 || n > w.length()) throw DomainError("orbit_points: index " + n.get_str() + " beyond word length");
    out.entries.push_back({n, frac(prefix_counts(w, n).dot(alpha, beta))});
  }
  return out;
}

namespace {

// Calls step(letter) for the letters at 1-based positions lo..hi, where the
// letters of w occupy positions offset+1 .. offset+|w|.
void walk(const WordExpr& w, const BigInt& offset, const BigInt& lo, const BigInt& hi,
          const std::function<void(char)>& step) {
  if (offset + w.length() < lo || offset + 1 > hi) return;
  switch (w.kind()) {
    case WordExpr::Kind::Empty: return;
    case WordExpr::Kind::X: step('x'); return;
    case WordExpr::Kind::Y: step('y'); return;
    case WordExpr::Kind::Concat:
      walk(w.left(), offset, lo, hi, step);
      walk(w.right(), offset + w.left().length(), lo, hi, step);
      return;
    case WordExpr::Kind::Power: {
      const BigInt& len = w.base().length();
      BigInt i0 = lo - 1 - offset;
      i0 = i0 < 0 ? BigInt(0) : BigInt(i0 / len);
      BigInt i1 = (hi - 1 - offset) / len;
      if (i1 > w.exponent() - 1) i1 = w.exponent() - 1;
      for (BigInt i = i0; i <= i1; ++i) walk(w.base(), offset + i * len, lo, hi, step);
      return;
    }
  }
}

void for_each_letter(const WordExpr& w, const std::function<void(char)>& step) {
  walk(w, BigInt(0), BigInt(1), w.length(), step);
}

// Integer numerators of frac(alpha), frac(beta) over their common denominator.
void common_denominator(const Rational& alpha, const Rational& beta, BigInt& a, BigInt& b, BigInt& d) {
  mpz_lcm(d.get_mpz_t(), alpha.get_den_mpz_t(), beta.get_den_mpz_t());
  Rational fa = frac(alpha) * Rational(d);
  Rational fb = frac(beta) * Rational(d);
  a = fa.get_num();
  b = fb.get_num();
}

}  // namespace

OrbitSample orbit_range(const WordExpr& w, const Rational& alpha, const Rational& beta,
                        const BigInt& first, const BigInt& last) {
  if (first < 0 || last > w.length() || first > last) throw DomainError("orbit_range: bad range");
  BigInt a, b, d;
  common_denominator(alpha, beta, a, b, d);
  CountVector c = prefix_counts(w, first);
  BigInt num = (c.x * a + c.y * b) % d;
  OrbitSample out;
  BigInt pos = first;
  auto emit = [&] {
    Rational p(num, d);
    p.canonicalize();
    out.entries.push_back({pos, p});
  };
  emit();
  walk(w, BigInt(0), first + 1, last, [&](char ch) {
    num += ch == 'x' ? a : b;
    if (num >= d) num -= d;
    ++pos;
    emit();
  });
  return out;
}

OrbitSample orbit_all(const WordExpr& w, const Rational& alpha, const Rational& beta, const BigInt& cap) {
  if (w.length() > cap) throw DomainError("orbit_all: word length " + w.length().get_str() + " exceeds cap " + cap.get_str());
  BigInt a, b, d;
  common_denominator(alpha, beta, a, b, d);
  OrbitSample out;
  out.entries.reserve(w.length().get_ui() + 1);
  BigInt pos = 0, num = 0;
  out.entries.push_back({pos, Rational(0)});
  for_each_letter(w, [&](char c) {
    num += c == 'x' ? a : b;
    if (num >= d) num -= d;
    ++pos;
    Rational p(num, d);
    p.canonicalize();
    out.entries.push_back({pos, p});
  });
  return out;
}

std::string flatten(const WordExpr& w) {
  if (w.length() > 1000000) throw DomainError("flatten: word longer than 10^6");
  std::string s;
  s.reserve(w.length().get_ui());
  for_each_letter(w, [&](char c) { s.push_back(c); });
  return s;
}

std::string to_text(const WordExpr& w) {
  switch (w.kind()) {
    case WordExpr::Kind::Empty: return "e";
    case WordExpr::Kind::X: return "x";
    case WordExpr::Kind::Y: return "y";
    case WordExpr::Kind::Concat: return "(" + to_text(w.left()) + " " + to_text(w.right()) + ")";
    case WordExpr::Kind::Power: return "(" + to_text(w.base()) + " ^ " + w.exponent().get_str() + ")";
  }
  return "";
}

namespace {

class TextParser {
public:
  explicit TextParser(const std::string& s) : s_(s) {}

  WordExpr parse() {
    WordExpr w = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return w;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw DomainError("word text: " + what + " at offset " + std::to_string(pos_));
  }
  WordExpr expr() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == 'x') { ++pos_; return WordExpr::x(); }
    if (c == 'y') { ++pos_; return WordExpr::y(); }
    if (c == 'e') { ++pos_; return WordExpr::empty(); }
    if (c != '(') fail(std::string("unexpected '") + c + "'");
    ++pos_;
    WordExpr first = expr();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      BigInt k(s_.substr(start, pos_ - start), 10);
      close();
      return WordExpr::power(first, k);
    }
    WordExpr second = expr();
    close();
    return WordExpr::concat(first, second);
  }
  void close() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
    ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

WordExpr parse_text(const std::string& text) { return TextParser(text).parse(); }

std::string orbit_csv(const OrbitSample& s) {
  std::ostringstream os;
  os << "index,numerator,denominator,decimal64\n";
  for (const auto& e : s.entries) {
    os << e.index.get_str() << ',' << e.point.get_num().get_str() << ',' << e.point.get_den().get_str() << ','
       << to_decimal(e.point, 17) << '\n';
  }
  return os.str();
}

}  // namespace abset::words

#pragma once

// Words over {x, y} held as immutable expression DAGs (atoms, concatenation,
// integer powers). Lengths and letter counts are memoized per node, so words
// of astronomical length are queried without being expanded.

#include "abset/numeric.hpp"

#include <memory>
#include <string>
#include <vector>

namespace abset::words {

struct CountVector {
  BigInt x = 0;
  BigInt y = 0;

  BigInt total() const { return x + y; }
  // (x*alpha + y*beta), not reduced.
  Rational dot(const Rational& alpha, const Rational& beta) const { return Rational(x) * alpha + Rational(y) * beta; }

  friend CountVector operator+(const CountVector& a, const CountVector& b) { return {a.x + b.x, a.y + b.y}; }
  friend CountVector operator-(const CountVector& a, const CountVector& b) { return {a.x - b.x, a.y - b.y}; }
  friend CountVector operator*(const BigInt& k, const CountVector& a) { return {k * a.x, k * a.y}; }
  friend bool operator==(const CountVector& a, const CountVector& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const CountVector& a, const CountVector& b) { return !(a == b); }
};

// Normalized frequency pair (|W|_x/|W|, |W|_y/|W|). Empty words map to (0,0).
std::pair<Rational, Rational> frequencies(const CountVector& c);

class WordExpr {
public:
  enum class Kind { Empty, X, Y, Concat, Power };

  WordExpr();  // the empty word

  static WordExpr x();
  static WordExpr y();
  static WordExpr empty() { return WordExpr(); }
  static WordExpr concat(const WordExpr& a, const WordExpr& b);
  static WordExpr concat(const std::vector<WordExpr>& parts);
  static WordExpr power(const WordExpr& base, const BigInt& k);
  // x^a y^b, the common block shape.
  static WordExpr block(const BigInt& a, const BigInt& b);

  Kind kind() const;
  const WordExpr& left() const;
  const WordExpr& right() const;
  const WordExpr& base() const;
  const BigInt& exponent() const;

  const CountVector& counts() const;
  const BigInt& length() const;
  std::size_t depth() const;
  // Number of distinct nodes reachable from this one.
  std::size_t node_count() const;

  bool same_node(const WordExpr& other) const { return node_ == other.node_; }

private:
  struct Node;
  explicit WordExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Counts of the length-j prefix; O(depth) BigInt operations.
CountVector prefix_counts(const WordExpr& w, const BigInt& j);

// Letter at 1-based position j: 'x' or 'y'.
char letter_at(const WordExpr& w, const BigInt& j);

// (|w|_x alpha + |w|_y beta) mod 1, in [0,1).
Rational evaluate_end(const WordExpr& w, const Rational& alpha, const Rational& beta);

struct OrbitEntry {
  BigInt index;
  Rational point;  // in [0,1)
};

struct OrbitSample {
  std::vector<OrbitEntry> entries;

  std::size_t size() const { return entries.size(); }
  std::vector<Rational> points() const;
};

// Points t_n for the requested indices (sorted ascending, duplicates removed).
OrbitSample orbit_points(const WordExpr& w, const Rational& alpha, const Rational& beta,
                         std::vector<BigInt> indices);
OrbitSample orbit_range(const WordExpr& w, const Rational& alpha, const Rational& beta,
                        const BigInt& first, const BigInt& last);

// All points t_0..t_{|w|}, walking the DAG once. Refuses |w| > cap.
OrbitSample orbit_all(const WordExpr& w, const Rational& alpha, const Rational& beta,
                      const BigInt& cap);

// Debug expansion to a string of 'x'/'y'. Refuses words longer than 10^6.
std::string flatten(const WordExpr& w);

// Text grammar: `x`, `y`, `e` (empty), `(E E)`, `(E ^ k)`.
std::string to_text(const WordExpr& w);
WordExpr parse_text(const std::string& text);

std::string orbit_csv(const OrbitSample& s);

}  // namespace abset::words

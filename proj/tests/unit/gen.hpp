#pragma once

// Small deterministic generators for property tests.

#include "abset/numeric.hpp"
#include "abset/word.hpp"

#include <cstdint>
#include <vector>

namespace gen {

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi].
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + next() % (hi - lo + 1); }
  bool coin() { return next() & 1; }

private:
  std::uint64_t state_;
};

inline abset::Rational rational(SplitMix64& g, std::uint64_t max_den = 1000) {
  std::uint64_t den = g.range(1, max_den);
  abset::Rational q(abset::BigInt(static_cast<unsigned long>(g.range(0, den - 1))),
                    abset::BigInt(static_cast<unsigned long>(den)));
  q.canonicalize();
  return q;
}

inline std::vector<abset::Rational> point_set(SplitMix64& g, std::size_t n, std::uint64_t max_den = 1000) {
  std::vector<abset::Rational> pts;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(rational(g, max_den));
  }
  return pts;
}

// Random DAG word; `budget` bounds the expanded length loosely.
inline abset::words::WordExpr word(SplitMix64& g, int depth, std::uint64_t budget = 64) {
  using abset::words::WordExpr;
  if (depth == 0 || budget <= 1) {
    switch (g.range(0, 4)) {
      case 0: return WordExpr::x();
      case 1: return WordExpr::y();
      case 2: return WordExpr::empty();
      default: return WordExpr::block(abset::BigInt(static_cast<unsigned long>(g.range(0, 3))),
                                      abset::BigInt(static_cast<unsigned long>(g.range(0, 3))));
    }
  }
  if (g.coin()) return WordExpr::concat(word(g, depth - 1, budget / 2), word(g, depth - 1, budget / 2));
  std::uint64_t k = g.range(0, 4);
  return WordExpr::power(word(g, depth - 1, budget / (k + 1)), abset::BigInt(static_cast<unsigned long>(k)));
}

}  // namespace gen

// Canonical a/b; mpq_class(a, b) leaves the fraction unreduced.
inline abset::Rational Q(long a, long b) {
  abset::Rational q(a, b);
  q.canonicalize();
  return q;
}

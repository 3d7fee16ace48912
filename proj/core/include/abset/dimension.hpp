#pragma once

// Covering numbers, separation and localized covering statistics for finite
// point sets on the circle R/Z. Points are exact rationals in [0,1).

#include "abset/numeric.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace abset::dim {

// min(|p-q|, 1-|p-q|) after reduction mod 1.
Rational circle_distance(const Rational& p, const Rational& q);

// Distinct cells floor(p / rho) of the grid anchored at 0.
BigInt grid_covering(const std::vector<Rational>& points, const Rational& rho);

// Minimal number of closed arcs of length rho covering the points (exact,
// O(n^2); meant for small sets).
std::size_t optimal_covering(const std::vector<Rational>& points, const Rational& rho);

// Smallest circular distance between distinct points; throws on fewer than
// two distinct points.
Rational min_gap(const std::vector<Rational>& points);

Rational hausdorff_distance(const std::vector<Rational>& a, const std::vector<Rational>& b);

// Greedy from the smallest point upward, keeping a point when it is at least
// rho from the last kept one; the wrap-around pair is checked at the end.
std::vector<Rational> maximal_separated_subset(const std::vector<Rational>& points, const Rational& rho);

bool is_separated(const std::vector<Rational>& points, const Rational& rho);

struct CoveringRow {
  Rational scale;
  BigInt count;
  BigFloat log_ratio;                // log N / log(1/rho)
  std::optional<BigFloat> slope;     // log(N_i/N_{i-1}) / log(rho_{i-1}/rho_i)
};

std::vector<CoveringRow> box_dim_series(const std::vector<Rational>& points, const std::vector<Rational>& scales,
                                        mpfr_prec_t prec = 128);

struct WindowRow {
  Rational R, delta;
  BigInt best_count = 0;   // max over windows of N(E ∩ J, delta R)
  Rational best_start;     // window [start, start + R]
  BigFloat probe;          // log(best_count) / log(1/delta)
};

// Windows of width R anchored at every point (circularly); cells of size
// delta*R on the grid anchored at 0.
std::vector<WindowRow> assouad_probe_windows(const std::vector<Rational>& points,
                                             const std::vector<std::pair<Rational, Rational>>& window_scales,
                                             mpfr_prec_t prec = 128);

// Sorted copy reduced into [0,1) with duplicates removed.
std::vector<Rational> normalize(std::vector<Rational> points);

}  // namespace abset::dim

#include "abset/dimension.hpp"

#include <algorithm>

namespace abset::dim {

std::vector<Rational> normalize(std::vector<Rational> points) {
  for (auto& p : points) p = frac(p);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

Rational circle_distance(const Rational& p, const Rational& q) {
  Rational d = abs_of(Rational(frac(p) - frac(q)));
  Rational other = 1 - d;
  return d < other ? d : other;
}

BigInt grid_covering(const std::vector<Rational>& points, const Rational& rho) {
  if (rho <= 0 || rho >= 1) throw DomainError("grid_covering: scale must lie in (0,1)");
  std::vector<BigInt> cells;
  cells.reserve(points.size());
  for (const auto& p : points) cells.push_back(floor_of(Rational(frac(p) / rho)));
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return BigInt(static_cast<unsigned long>(cells.size()));
}

std::size_t optimal_covering(const std::vector<Rational>& points, const Rational& rho) {
  auto pts = normalize(points);
  if (pts.empty()) return 0;
  if (rho >= 1) return 1;
  std::size_t n = pts.size();
  std::size_t best = n;
  // Some optimal cover has an arc whose left end is a point.
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t arcs = 1;
    Rational right = rho;  // coverage [0, rho] relative to pts[s]
    for (std::size_t k = 1; k < n; ++k) {
      Rational rel = pts[(s + k) % n] - pts[s];
      if (rel < 0) rel += 1;
      if (rel > right) {
        ++arcs;
        right = rel + rho;
        if (arcs >= best) break;
      }
    }
    best = std::min(best, arcs);
  }
  return best;
}

Rational min_gap(const std::vector<Rational>& points) {
  auto pts = normalize(points);
  if (pts.size() < 2) throw DomainError("min_gap: need at least two distinct points");
  Rational best = 1 - pts.back() + pts.front();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Rational g = pts[i] - pts[i - 1];
    if (g < best) best = g;
  }
  return best;
}

namespace {

// Distance from p to the nearest point of a sorted non-empty set.
Rational distance_to_set(const Rational& p, const std::vector<Rational>& sorted) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
  const Rational& after = it == sorted.end() ? sorted.front() : *it;
  const Rational& before = it == sorted.begin() ? sorted.back() : *std::prev(it);
  return std::min(circle_distance(p, after), circle_distance(p, before));
}

}  // namespace

Rational hausdorff_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  auto A = normalize(a);
  auto B = normalize(b);
  if (A.empty() || B.empty()) throw DomainError("hausdorff_distance: empty input");
  Rational best = 0;
  for (const auto& p : A) best = std::max(best, distance_to_set(p, B));
  for (const auto& q : B) best = std::max(best, distance_to_set(q, A));
  return best;
}

std::vector<Rational> maximal_separated_subset(const std::vector<Rational>& points, const Rational& rho) {
  auto pts = normalize(points);
  if (pts.empty()) throw DomainError("maximal_separated_subset: empty input");
  std::vector<Rational> kept{pts.front()};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] - kept.back() >= rho) kept.push_back(pts[i]);
  }
  if (kept.size() > 1 && 1 - kept.back() + kept.front() < rho) kept.pop_back();
  return kept;
}

bool is_separated(const std::vector<Rational>& points, const Rational& rho) {
  auto pts = normalize(points);
  if (pts.size() != points.size()) return false;  // coincident points
  if (pts.size() < 2) return true;
  return min_gap(pts) >= rho;
}

std::vector<CoveringRow> box_dim_series(const std::vector<Rational>& points, const std::vector<Rational>& scales,
                                        mpfr_prec_t prec) {
  for (std::size_t i = 1; i < scales.size(); ++i) {
    if (!(scales[i] < scales[i - 1])) throw DomainError("box_dim_series: scales must be strictly decreasing");
  }
  std::vector<CoveringRow> rows;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    CoveringRow row{scales[i], grid_covering(points, scales[i]), BigFloat(prec), std::nullopt};
    BigFloat denom = log_of(Rational(1 / scales[i]), prec);
    row.log_ratio = divide(log_of(row.count, prec), denom);
    if (i > 0) {
      BigFloat num = log_of(Rational(Rational(row.count) / Rational(rows.back().count)), prec);
      BigFloat den = log_of(Rational(scales[i - 1] / scales[i]), prec);
      row.slope = divide(num, den);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<WindowRow> assouad_probe_windows(const std::vector<Rational>& points,
                                             const std::vector<std::pair<Rational, Rational>>& window_scales,
                                             mpfr_prec_t prec) {
  auto pts = normalize(points);
  std::vector<WindowRow> rows;
  std::size_t n = pts.size();
  for (const auto& [R, delta] : window_scales) {
    if (!(delta > 0 && delta < 1) || R <= 0) throw DomainError("assouad_probe_windows: need R > 0, 0 < delta < 1");
    WindowRow row{R, delta, 0, 0, BigFloat(prec)};
    if (n == 0) {
      rows.push_back(std::move(row));
      continue;
    }
    Rational cell = delta * R;
    // Doubled sequence p_k, p_k + 1 so windows can wrap past 1.
    std::vector<Rational> ext(2 * n);
    std::vector<BigInt> cells(2 * n);
    for (std::size_t k = 0; k < 2 * n; ++k) {
      ext[k] = k < n ? pts[k] : Rational(pts[k - n] + 1);
      cells[k] = floor_of(Rational(ext[k] / cell));
    }
    std::vector<std::size_t> changes(2 * n, 0);
    for (std::size_t k = 1; k < 2 * n; ++k) changes[k] = changes[k - 1] + (cells[k] != cells[k - 1] ? 1 : 0);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (j < i) j = i;
      Rational end = ext[i] + R;
      while (j + 1 < i + n && ext[j + 1] <= end) ++j;
      BigInt count = BigInt(static_cast<unsigned long>(1 + changes[j] - changes[i]));
      if (count > row.best_count) {
        row.best_count = count;
        row.best_start = ext[i];
      }
    }
    row.probe = divide(log_of(row.best_count, prec), log_of(Rational(1 / delta), prec));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace abset::dim

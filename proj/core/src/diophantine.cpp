#include "abset/diophantine.hpp"

#include "abset/dimension.hpp"

#include <algorithm>
#include <cmath>

namespace abset::dioph {

namespace {

Value linear(const IntVec& u, const Value& alpha, const Value& beta) { return u.a * alpha + u.b * beta; }

Value abs_value(const Value& v) {
  if (v.exact) return Value::of(abs_of(*v.exact), v.precision());
  return Value::of(v.iv.abs());
}

bool is_zero(const Value& v) {
  if (v.exact) return *v.exact == 0;
  return v.iv.is_point() && v.iv.contains_zero();
}

bool decide(Tri t, const std::string& what) {
  if (t == Tri::Unknown) throw PrecisionError(what);
  return t == Tri::True;
}

IntVec scaled(const IntVec& u, const BigInt& k) { return IntVec{k * u.a, k * u.b}; }

}  // namespace

MinimaRecord delta_n(const Value& alpha, const Value& beta, unsigned long n) {
  if (n == 0) throw DomainError("delta_n: n must be >= 1");
  MinimaRecord rec;
  rec.n = n;
  for (unsigned long a = 0; a <= n; ++a) {
    IntVec u{BigInt(a), BigInt(n - a)};
    Value d = dist_to_int(linear(u, alpha, beta));
    if (a == 0 || decide(less(d, rec.delta), "delta_n candidates at n=" + std::to_string(n))) {
      rec.delta = d;
      rec.u = u;
    }
  }
  return rec;
}

std::vector<unsigned long> MinimaScan::minimal_indices() const {
  std::vector<unsigned long> out;
  for (const auto& r : records)
    if (r.minimal) out.push_back(r.n);
  return out;
}

MinimaScan minima_sequence(const Value& alpha, const Value& beta, unsigned long n_max) {
  if (n_max == 0) throw DomainError("minima_sequence: n_max must be >= 1");
  MinimaScan scan;
  std::optional<Value> running;
  for (unsigned long n = 1; n <= n_max; ++n) {
    MinimaRecord rec = delta_n(alpha, beta, n);
    rec.minimal = !running || decide(less_equal(rec.delta, *running), "minimality at n=" + std::to_string(n));
    if (rec.minimal) running = rec.delta;
    bool zero = is_zero(rec.delta);
    scan.records.push_back(std::move(rec));
    if (zero) {
      scan.zero_at = n;
      break;
    }
  }
  return scan;
}

std::optional<CommonVector> common_integer_vector(const IntVec& u, const IntVec& v) {
  if (u.a * v.b - u.b * v.a != 0) return std::nullopt;
  const IntVec& nz = (u.a != 0 || u.b != 0) ? u : v;
  if (nz.a == 0 && nz.b == 0) return CommonVector{IntVec{}, 1, 1};
  BigInt g;
  mpz_gcd(g.get_mpz_t(), nz.a.get_mpz_t(), nz.b.get_mpz_t());
  IntVec w{nz.a / g, nz.b / g};
  auto coef = [&](const IntVec& x) -> BigInt { return w.a != 0 ? BigInt(x.a / w.a) : BigInt(x.b / w.b); };
  CommonVector cv{w, coef(u), coef(v)};
  if (!(scaled(w, cv.p) == u && scaled(w, cv.q) == v)) return std::nullopt;
  return cv;
}

RatioScan integer_ratio_scan(const MinimaScan& scan, const Rational& tol) {
  RatioScan out;
  out.early_stop = scan.zero_at;
  std::vector<const MinimaRecord*> live;
  std::vector<double> approx;
  for (const auto& r : scan.records) {
    if (is_zero(r.delta)) continue;
    live.push_back(&r);
    approx.push_back(r.delta.representative().get_d());
  }
  double tol_d = tol.get_d();
  for (std::size_t ii = 0; ii < live.size(); ++ii) {
    for (std::size_t jj = 0; jj < live.size(); ++jj) {
      if (ii == jj) continue;
      ++out.pairs;
      double rd = approx[jj] / approx[ii];
      double ld = std::nearbyint(rd);
      if (ld < 1 || std::fabs(rd - ld) > tol_d + 1e-9 * std::max(1.0, rd)) continue;
      const MinimaRecord& ri = *live[ii];
      const MinimaRecord& rj = *live[jj];
      Value ratio = rj.delta / ri.delta;
      BigInt ell = floor_of(Rational(ratio.representative() + Rational(1, 2)));
      if (ell < 1) continue;
      Value diff = abs_value(ratio - Value::of(Rational(ell), ratio.precision()));
      if (!decide(less(diff, Value::of(tol, ratio.precision())), "ratio integrality")) continue;
      RatioHit h;
      h.i = ri.n;
      h.j = rj.n;
      h.ell = ell;
      h.divides = rj.n % ri.n == 0;
      h.multiple = rj.u == scaled(ri.u, ell);
      auto cv = common_integer_vector(ri.u, rj.u);
      h.common_ok = cv.has_value();
      out.hits.push_back(h);
      if (!(h.divides && h.multiple && h.common_ok)) out.violations.push_back(h);
    }
  }
  return out;
}

CheckList subadditivity_check(const Value& alpha, const Value& beta, const MinimaScan& scan, unsigned long limit) {
  limit = std::min<unsigned long>(limit, scan.size());
  unsigned long pairs = 0, tied = 0, failed = 0;
  for (unsigned long a = 1; a <= limit; ++a) {
    for (unsigned long b = a; a + b <= limit; ++b) {
      const auto& ra = scan.at(a);
      const auto& rb = scan.at(b);
      IntVec w{ra.u.a + rb.u.a, ra.u.b + rb.u.b};
      Value lhs = dist_to_int(linear(w, alpha, beta));
      Tri t = less_equal(lhs, ra.delta + rb.delta);
      ++pairs;
      // Unknown only when the two sides agree to working precision; the
      // inequality is then the triangle inequality for the same linear form.
      if (t == Tri::Unknown) ++tied;
      if (t == Tri::False) ++failed;
    }
  }
  return {make_check("subadditive_sum_vectors", failed == 0, Severity::Asserted,
                     std::to_string(pairs) + " pairs, " + std::to_string(tied) + " tied, " + std::to_string(failed) +
                         " failed",
                     "||(u_a+u_b).theta|| <= delta_a + delta_b")};
}

void ProbeParams::validate() const {
  if (!(s > 0 && s < Rational(1, 2))) throw DomainError("probe parameter s must satisfy 0 < s < 1/2");
  if (!(t > 1 + 2 * s)) throw DomainError("probe parameter t must satisfy t > 1 + 2s");
  if (!(r > 0 && r < 1)) throw DomainError("probe parameter r must satisfy 0 < r < 1");
}

Rational implied_exponent(const ProbeParams& p) {
  return std::min({Rational(p.s / p.t), Rational(p.r / p.t), p.r});
}

Rational implied_exponent_limit(const ProbeParams& p) {
  Rational s_sup = std::min(Rational(1, 2), Rational((p.t - 1) / 2));
  return std::min({Rational(s_sup / p.t), Rational(p.r / p.t), p.r});
}

Value power(const Value& delta, const Rational& e) {
  if (e.get_den() == 1 && e.get_num().fits_slong_p()) return pow_of(delta, e.get_num().get_si());
  if (is_zero(delta)) throw DomainError("power: zero base with fractional exponent");
  return Value::of(pow_rational_exponent(delta.iv, e));
}

BigInt window_length(const Value& delta, const Rational& s) {
  Value p = power(delta, Rational(-s));
  if (p.exact) return ceil_of(*p.exact);
  BigInt lo = ceil_of(p.iv.lo().to_rational());
  BigInt hi = ceil_of(p.iv.hi().to_rational());
  if (lo != hi) throw PrecisionError("ceil(delta^-s) straddles an integer");
  return lo;
}

NoCloseVerdict no_close_minima_check(const MinimaScan& scan, const ProbeParams& params, unsigned long n,
                                     unsigned long budget) {
  params.validate();
  if (n == 0 || n > scan.size()) throw DomainError("no_close_minima_check: n outside the scan");
  const auto& rn = scan.at(n);
  if (!rn.minimal) throw DomainError("no_close_minima_check: delta_n is not minimal");
  if (is_zero(rn.delta)) throw DomainError("no_close_minima_check: delta_n = 0");
  NoCloseVerdict v;
  v.n = n;
  v.N = window_length(rn.delta, params.s);
  Value thr = power(rn.delta, params.t);
  BigInt cap = std::min<BigInt>({v.N, BigInt(scan.size()), BigInt(budget)});
  v.covered_upto = cap.get_ui();
  v.partial = BigInt(v.covered_upto) < v.N;
  for (unsigned long k = n + 1; k <= v.covered_upto; ++k) {
    if (decide(less(scan.at(k).delta, thr), "delta_k < delta_n^t at k=" + std::to_string(k))) v.qualifying.push_back(k);
  }
  for (std::size_t x = 0; x < v.qualifying.size(); ++x) {
    for (std::size_t y = x + 1; y < v.qualifying.size(); ++y) {
      unsigned long m = v.qualifying[x], k = v.qualifying[y];
      ++v.pairs_checked;
      bool ok = k % m == 0;
      if (ok) {
        BigInt q(k / m);
        ok = scan.at(k).u == scaled(scan.at(m).u, q);
        Value diff = scan.at(k).delta - q * scan.at(m).delta;
        ok = ok && (diff.exact ? *diff.exact == 0 : diff.iv.contains_zero());
      }
      if (!ok) v.failures.emplace_back(m, k);
    }
  }
  if (v.pairs_checked == 0)
    v.verdict = "vacuously consistent";
  else
    v.verdict = v.failures.empty() ? "consistent" : "inconsistent";
  if (v.partial) v.verdict += " (partial, k <= " + std::to_string(v.covered_upto) + ")";
  return v;
}

Value ValueOrbit::point(std::size_t i) const { return mod1(linear(counts.at(i - 1), alpha, beta)); }

Value ValueOrbit::distance(std::size_t i, std::size_t j) const {
  const IntVec& ci = counts.at(i - 1);
  const IntVec& cj = counts.at(j - 1);
  return dist_to_int(linear(IntVec{cj.a - ci.a, cj.b - ci.b}, alpha, beta));
}

ValueOrbit value_orbit(const words::WordExpr& w, const Value& alpha, const Value& beta, std::size_t count) {
  if (BigInt(static_cast<unsigned long>(count)) > w.length()) throw DomainError("value_orbit: word too short");
  ValueOrbit o{alpha, beta, {}};
  o.counts.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    auto c = words::prefix_counts(w, BigInt(static_cast<unsigned long>(i)));
    o.counts.push_back(IntVec{c.x, c.y});
  }
  return o;
}

DistanceReport orbit_distance_check(const ValueOrbit& orbit, const MinimaScan& scan) {
  DistanceReport rep;
  for (std::size_t i = 1; i <= orbit.size(); ++i) {
    for (std::size_t j = i + 1; j <= orbit.size(); ++j) {
      unsigned long k = j - i;
      if (k > scan.size()) continue;
      ++rep.pairs;
      const IntVec& ci = orbit.counts[i - 1];
      const IntVec& cj = orbit.counts[j - 1];
      if (IntVec{cj.a - ci.a, cj.b - ci.b} == scan.at(k).u) {
        ++rep.equalities;
        continue;
      }
      if (!decide(less_equal(scan.at(k).delta, orbit.distance(i, j)), "orbit pair distance"))
        rep.violations.emplace_back(i, j);
    }
  }
  return rep;
}

Dichotomy gap_dichotomy(const ValueOrbit& orbit, const MinimaScan& scan, unsigned long n, unsigned long m,
                        const ProbeParams& params) {
  params.validate();
  Dichotomy d;
  d.n = n;
  d.m = m;
  auto refuse = [&](std::string why) {
    d.refused = true;
    d.reason = std::move(why);
    return d;
  };
  if (n == 0 || n > scan.size()) return refuse("n outside the scan");
  const auto& rn = scan.at(n);
  if (!rn.minimal) return refuse("delta_n is not minimal");
  if (is_zero(rn.delta)) return refuse("delta_n = 0");
  d.N = window_length(rn.delta, params.s);
  if (m == 0 || BigInt(m) > d.N) return refuse("m exceeds N");
  if (m > scan.size()) return refuse("m outside the scan");
  const auto& rm = scan.at(m);
  if (!rm.minimal) return refuse("delta_m is not minimal");
  Value thr = power(rn.delta, params.t);
  if (!decide(less(rm.delta, thr), "delta_m < delta_n^t")) return refuse("delta_m >= delta_n^t");
  if (BigInt(static_cast<unsigned long>(orbit.size())) < d.N) return refuse("orbit has fewer than N points");
  Value cluster = rm.delta / power(rn.delta, params.s);
  std::size_t N = d.N.get_ui();
  for (std::size_t i = 1; i <= N; ++i) {
    for (std::size_t j = i + 1; j <= N; ++j) {
      ++d.pairs;
      const IntVec& ci = orbit.counts[i - 1];
      const IntVec& cj = orbit.counts[j - 1];
      Value dist = orbit.distance(i, j);
      bool at_delta_m = IntVec{cj.a - ci.a, cj.b - ci.b} == rm.u;
      if (!at_delta_m && decide(less(dist, rm.delta), "part (1) separation")) d.separation_failures.emplace_back(i, j);
      if (decide(less_equal(thr, dist), "separated threshold"))
        ++d.separated;
      else if (at_delta_m || decide(less_equal(dist, cluster), "cluster threshold"))
        ++d.clustered;
      else
        d.violations.emplace_back(i, j);
    }
  }
  return d;
}

std::vector<std::pair<unsigned long, unsigned long>> qualifying_pairs(const MinimaScan& scan,
                                                                      const ProbeParams& params) {
  params.validate();
  std::vector<std::pair<unsigned long, unsigned long>> out;
  for (const auto& rn : scan.records) {
    if (!rn.minimal || is_zero(rn.delta)) continue;
    BigInt N = window_length(rn.delta, params.s);
    Value thr = power(rn.delta, params.t);
    unsigned long cap = std::min<BigInt>(N, BigInt(scan.size())).get_ui();
    for (unsigned long m = rn.n + 1; m <= cap; ++m) {
      const auto& rm = scan.at(m);
      if (rm.minimal && decide(less(rm.delta, thr), "qualifying delta_m")) out.emplace_back(rn.n, m);
    }
  }
  return out;
}

ProbeReport assouad_lower_probe(const ValueOrbit& orbit, const IndexSet& U, const MinimaScan& scan,
                                const ProbeParams& params, const std::vector<unsigned long>& n_list) {
  params.validate();
  ProbeReport rep;
  rep.params = params;
  rep.implied_exponent = implied_exponent(params);
  rep.implied_exponent_limit = implied_exponent_limit(params);
  for (unsigned long n : n_list) {
    ProbeCase pc;
    pc.n = n;
    if (n == 0 || n > scan.size()) {
      pc.status = "skipped: n outside the scan";
      rep.cases.push_back(pc);
      continue;
    }
    const auto& rn = scan.at(n);
    if (!rn.minimal || is_zero(rn.delta)) {
      pc.status = "skipped: delta_n not minimal or zero";
      rep.cases.push_back(pc);
      continue;
    }
    pc.N = window_length(rn.delta, params.s);
    if (pc.N > BigInt(scan.size()) || pc.N > BigInt(static_cast<unsigned long>(orbit.size()))) {
      pc.status = "skipped: orbit or scan shorter than N";
      rep.cases.push_back(pc);
      continue;
    }
    unsigned long N = pc.N.get_ui();
    BigInt inU = U.count_upto(pc.N);
    pc.rho_N = Rational(inU) / Rational(pc.N);
    Value thr = power(rn.delta, params.t);
    // Smallest delta_m < delta_n^t on (n, N]; the argmin is itself minimal.
    std::optional<unsigned long> m;
    for (unsigned long k = n + 1; k <= N; ++k) {
      const auto& rk = scan.at(k);
      if (!decide(less(rk.delta, thr), "case split")) continue;
      if (!m || decide(less(rk.delta, scan.at(*m).delta), "case split argmin")) m = k;
    }
    if (!m) {
      pc.status = "case1";
      pc.count = inU;
      pc.bound = pc.rho_N * Rational(pc.N);
      pc.exponent = params.s / params.t;
      rep.cases.push_back(pc);
      continue;
    }
    pc.m = *m;
    // Case 2 works with exact representatives of the enclosures.
    std::vector<Rational> E;
    for (unsigned long i = 1; i <= N; ++i)
      if (U.contains(BigInt(i))) E.push_back(orbit.point(i).representative());
    E = dim::normalize(E);
    Rational half_thr = thr.representative() / 2;
    auto F = dim::maximal_separated_subset(E, half_thr);
    Rational F_bound = power(rn.delta, Rational(-params.r)).representative();
    if (Rational(static_cast<unsigned long>(F.size())) > F_bound) {
      pc.status = "case2a";
      pc.count = BigInt(static_cast<unsigned long>(F.size()));
      pc.bound = F_bound;
      pc.exponent = params.r / params.t;
      rep.cases.push_back(pc);
      continue;
    }
    pc.status = "case2b";
    pc.window_radius = (scan.at(*m).delta / power(rn.delta, params.s)).representative();
    std::size_t best = 0;
    for (const auto& y : F) {
      std::size_t c = 0;
      for (const auto& p : E)
        if (dim::circle_distance(p, y) < pc.window_radius) ++c;
      if (c > best) {
        best = c;
        pc.window_center = y;
      }
    }
    pc.count = BigInt(static_cast<unsigned long>(best));
    pc.bound = pc.rho_N * Rational(pc.N) * power(rn.delta, params.r).representative();
    pc.exponent = params.r;
    rep.cases.push_back(pc);
  }
  return rep;
}

}  // namespace abset::dioph

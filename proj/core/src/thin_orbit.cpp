#include "abset/thin_orbit.hpp"

#include "abset/dimension.hpp"

#include <algorithm>

namespace abset::thin {

namespace {

std::string dec(const Rational& q) { return to_decimal(q, 17); }

Rational sqrt_down(const Rational& q) { return sqrt_lower(q, 256); }

// Bits needed for the denominator of q.
unsigned long den_bits(const Rational& q) { return mpz_sizeinbase(q.get_den_mpz_t(), 2); }

}  // namespace

unsigned long ThinConfig::rho(unsigned n) const {
  if (paper_decay) return 1000UL * n * n * n;
  return decay;
}

void ThinConfig::validate() const {
  if (m < 1) throw DomainError("thin-orbit: m must be >= 1");
  if (eps1 <= 0 || eps1 >= Rational(1, 1024)) throw DomainError("thin-orbit: eps1 must lie in (0, 2^-10)");
  if (!paper_decay && decay < 2) throw DomainError("thin-orbit: decay exponent must be >= 2");
  if (stages < 1) throw DomainError("thin-orbit: need at least one stage");
  if (sqrt_buffer < 1) throw DomainError("thin-orbit: sqrt buffer must be >= 1");
}

TStage init(const ThinConfig& cfg) {
  cfg.validate();
  TStage s;
  s.n = 1;
  // m (alpha + beta) = m + eps_1 at alpha = 1/2 + eps_1/m, beta = 1/2.
  s.alpha = Rational(1, 2) + cfg.eps1 / Rational(cfg.m);
  s.beta = Rational(1, 2);
  s.eps = cfg.eps1;
  s.W = WordExpr::block(cfg.m, cfg.m);
  s.k = cfg.m;
  s.l = cfg.m;
  s.N_len = 2 * cfg.m;
  return s;
}

BigInt choose_L(const BigInt& N_len, const BigInt& target, unsigned long buffer) {
  auto f = [&](const BigInt& L) -> BigInt { return (L + BigInt(buffer) * isqrt_ceil(L)) * N_len; };
  BigInt lo = 0, hi = 1;
  while (f(hi) <= target) hi *= 2;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (f(mid) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (lo < 4) {
    throw DomainError("choose_L: L = " + lo.get_str() + " < 4 (target " + target.get_str() + ", N_n " +
                      N_len.get_str() + "); configuration too small");
  }
  return lo;
}

BigInt choose_L(const TStage& stage, const ThinConfig& cfg) {
  BigInt target = iroot_ceil(Rational(1 / stage.eps), stage.n);
  return choose_L(stage.N_len, target, cfg.sqrt_buffer);
}

WordExpr build_V(const TStage& stage, const BigInt& L) {
  BigInt a = 2 * stage.k - stage.l;
  BigInt b = 2 * stage.l + stage.k;
  if (a <= 0 || 2 * stage.l - stage.k <= 0) throw DomainError("build_V: symbol balance violated");
  return WordExpr::power(WordExpr::block(a, b), isqrt_ceil(L));
}

TStage advance(TStage& st, const ThinConfig& cfg) {
  BigInt L = choose_L(st, cfg);
  st.L = L;
  st.sqrtL = isqrt_ceil(L);
  st.V = build_V(st, L);

  TStage nx;
  nx.n = st.n + 1;
  nx.W = WordExpr::concat(WordExpr::power(st.W, L), st.V);
  nx.k = nx.W.counts().x;
  nx.l = nx.W.counts().y;
  nx.N_len = nx.W.length();
  nx.eps = pow_rational(st.eps, cfg.rho(nx.n));

  // Moving along (l, -k) leaves W_n fixed and changes W_{n+1} at rate coef.
  Rational r0 = Rational(nx.k) * st.alpha + Rational(nx.l) * st.beta;
  BigInt coef = nx.k * st.l - nx.l * st.k;
  if (coef == 0) throw DomainError("thin advance: coefficient of t vanishes at stage " + std::to_string(st.n));
  Rational gap = nx.eps - r0;
  if (coef < 0) gap = -gap;
  nx.t = frac(gap) / Rational(abs(coef));
  nx.d_alpha = nx.t * Rational(st.l);
  nx.d_beta = -nx.t * Rational(st.k);
  nx.alpha = st.alpha + nx.d_alpha;
  nx.beta = st.beta + nx.d_beta;

  if (words::evaluate_end(nx.W, nx.alpha, nx.beta) != nx.eps) {
    throw DomainError("thin advance: target equation not met at stage " + std::to_string(nx.n));
  }
  return nx;
}

ThinRun build(const ThinConfig& cfg) {
  ThinRun run;
  run.cfg = cfg;
  run.stages.push_back(init(cfg));
  while (run.stages.size() < cfg.stages) {
    const TStage& last = run.stages.back();
    unsigned long bits = den_bits(last.eps) * cfg.rho(last.n + 1);
    if (bits > cfg.bit_budget) {
      run.truncated = "stage " + std::to_string(last.n + 1) + " needs ~" + std::to_string(bits) +
                      "-bit numbers, over the budget of " + std::to_string(cfg.bit_budget) + " bits";
      break;
    }
    TStage next = advance(run.stages.back(), cfg);
    run.stages.push_back(std::move(next));
  }
  return run;
}

CheckList verify_stage(const TStage& st, const TStage* prev, const TStage* next, unsigned long buffer) {
  CheckList out;
  const std::string p = "stage" + std::to_string(st.n) + ".";
  Rational w = words::evaluate_end(st.W, st.alpha, st.beta);
  out.push_back(make_check(p + "W_value_eq_eps", w == st.eps, Severity::Asserted, dec(w), dec(st.eps)));

  Rational ratio(st.k, st.l);
  ratio.canonicalize();
  Rational lo(st.n + 1, 2 * st.n + 1), hi(2 * st.n + 1, st.n + 1);
  lo.canonicalize();
  hi.canonicalize();
  out.push_back(make_check(p + "symbol_balance", lo < ratio && ratio < hi, Severity::Asserted, dec(ratio),
                           "(" + exact_string(lo) + ", " + exact_string(hi) + ")"));
  out.push_back(make_check(p + "positive_V_exponents", 2 * st.k - st.l > 0 && 2 * st.l - st.k > 0));
  out.push_back(make_check(p + "length_is_count_sum", st.N_len == st.k + st.l && st.N_len == st.W.length()));

  if (prev) {
    Rational norm_sq = st.t * st.t * Rational(prev->k * prev->k + prev->l * prev->l);
    out.push_back(make_check(p + "perturbation_below_sqrt_eps", norm_sq < prev->eps, Severity::Reported,
                             dec(norm_sq), "||Delta||^2 < " + dec(prev->eps)));
    out.push_back(make_check(p + "t_nonnegative", st.t >= 0, Severity::Asserted, dec(st.t)));
  }
  if (next && st.L) {
    const BigInt& L = *st.L;
    Rational w_next = words::evaluate_end(st.W, next->alpha, next->beta);
    out.push_back(make_check(p + "preserved_one_step", w_next == st.eps, Severity::Asserted, dec(w_next), dec(st.eps)));
    BigInt target = iroot_ceil(Rational(1 / st.eps), st.n);
    auto f = [&](const BigInt& x) -> BigInt { return (x + BigInt(buffer) * isqrt_ceil(x)) * st.N_len; };
    bool defining = f(L) <= target && target < f(L + 1);
    out.push_back(make_check(p + "L_defining_inequality", defining, Severity::Asserted, L.get_str(),
                             "target " + target.get_str()));
    words::CountVector cv = st.V.counts();
    BigInt r = isqrt_ceil(L);
    bool counts_ok = cv.x == r * (2 * st.k - st.l) && cv.y == r * (2 * st.l + st.k);
    BigInt perp_dot = (cv.x - 2 * r * st.k) * st.k + (cv.y - 2 * r * st.l) * st.l;
    out.push_back(make_check(p + "V_counts", counts_ok));
    out.push_back(make_check(p + "V_perp_orthogonal", perp_dot == 0, Severity::Asserted, perp_dot.get_str(), "0"));
    out.push_back(make_check(p + "prefix_property", words::prefix_counts(next->W, st.N_len) == st.W.counts()));
    out.push_back(make_check(p + "update_orthogonal", next->d_alpha * Rational(st.k) + next->d_beta * Rational(st.l) == 0));
  }
  return out;
}

CheckList verify_drift(const ThinRun& run) {
  CheckList out;
  const auto& S = run.stages;
  for (std::size_t n = 0; n < S.size(); ++n) {
    Rational budget = 0;
    for (std::size_t m = n + 1; m < S.size(); ++m) {
      const TStage& sm = S[m];
      budget += Rational(S[n].N_len) * std::max(abs_of(sm.d_alpha), abs_of(sm.d_beta));
      Rational now = words::evaluate_end(S[n].W, sm.alpha, sm.beta);
      Rational drift = abs_of(centered_mod1(Rational(now - S[n].eps)));
      std::string p = "drift.W" + std::to_string(S[n].n) + "_at_stage" + std::to_string(sm.n);
      out.push_back(make_check(p + ".within_step_sum", drift <= budget, Severity::Asserted, dec(drift), dec(budget)));
      out.push_back(make_check(p + ".below_2eps", drift < 2 * S[n].eps, Severity::Reported, dec(drift),
                               dec(Rational(2 * S[n].eps))));
      if (m >= n + 2) {
        out.push_back(make_check(p + ".not_persistent", now != S[n].eps, Severity::Reported, dec(now), dec(S[n].eps)));
      }
    }
  }
  return out;
}

IndexSet J_set(const ThinRun& run, unsigned i) {
  const auto& S = run.stages;
  if (i < 1 || i + 1 > S.size()) return IndexSet();
  const TStage& si = S[i - 1];
  // Inside W_{i+1} = W_i^{L_i} V_i the copy of V_i is the tail.
  IndexSet j = IndexSet::interval(*si.L * si.N_len + 1, S[i].N_len);
  for (unsigned lvl = i + 1; lvl < S.size(); ++lvl) {
    const TStage& s = S[lvl - 1];
    j = IndexSet::periodic(0, s.N_len, *s.L, j);
  }
  return j;
}

IndexSet J_union_from(const ThinRun& run, unsigned lo) {
  std::vector<IndexSet> parts;
  for (unsigned i = std::max(1u, lo); i + 1 <= run.stages.size(); ++i) parts.push_back(J_set(run, i));
  return IndexSet::disjoint_union(parts);
}

DeletedSets deleted_sets(const ThinRun& run, unsigned n, std::optional<BigInt> horizon) {
  DeletedSets d;
  d.horizon = horizon ? *horizon : run.stages.back().N_len;
  if (d.horizon < 1 || d.horizon > run.stages.back().N_len) throw DomainError("deleted_sets: horizon out of range");
  d.J_n = J_set(run, n);
  d.J_above = J_union_from(run, n + 1);
  d.density_J_n = d.J_n.density_at(d.horizon);
  d.upper_density_J_n = d.J_n.upper_density(d.horizon);
  d.density_above = d.J_above.density_at(d.horizon);
  d.upper_density_above = d.J_above.upper_density(d.horizon);
  return d;
}

CheckList verify_densities(const ThinRun& run, std::vector<Rational>* densities) {
  CheckList out;
  std::vector<Rational> d;
  for (unsigned n = 0; n < run.stages.size(); ++n) d.push_back(deleted_sets(run, n).upper_density_above);
  for (unsigned n = 1; n < d.size(); ++n) {
    out.push_back(make_check("upper_density_J_above_" + std::to_string(n) + "_below_" + std::to_string(n - 1),
                             d[n] < d[n - 1], Severity::Asserted, exact_string(d[n]), exact_string(d[n - 1])));
  }
  if (densities) *densities = std::move(d);
  return out;
}

BigInt UniformBig::operator()(const BigInt& lo, const BigInt& hi) {
  if (hi < lo) throw DomainError("UniformBig: empty range");
  BigInt span = hi - lo + 1;
  std::size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2);
  std::size_t words = (bits + 63) / 64;
  for (;;) {
    BigInt r = 0;
    for (std::size_t i = 0; i < words; ++i) {
      std::uint64_t v = eng_();
      BigInt part;
      mpz_import(part.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
      r = (r << 64) + part;
    }
    std::size_t excess = words * 64 - bits;
    r >>= excess;
    if (r < span) return lo + r;
  }
}

namespace {

struct Split {
  bool admissible = false;
  std::vector<BigInt> q;  // copies per level, index 0 is level n0
  BigInt tail = 0;        // position inside the final W_{n0} copy, in [1, N_{n0}]
};

// Locates letter j of W_K down to level n0.
Split descend(const std::vector<TStage>& S, unsigned n0, const BigInt& j) {
  Split sp;
  std::size_t K = S.size();
  sp.q.assign(K - n0, 0);
  BigInt pos = j;
  for (std::size_t lvl = K - 1; lvl >= n0; --lvl) {
    const TStage& s = S[lvl - 1];
    BigInt body = *s.L * s.N_len;
    if (pos > body) return sp;  // inside V_lvl
    BigInt qq = (pos - 1) / s.N_len;
    sp.q[lvl - n0] = qq;
    pos -= qq * s.N_len;
  }
  sp.admissible = true;
  sp.tail = pos;
  return sp;
}

}  // namespace

CoveringReport restricted_covering(const ThinRun& run, unsigned n0, std::size_t samples, std::uint64_t seed,
                                   Severity sev) {
  const auto& S = run.stages;
  if (n0 < 1 || n0 > S.size()) throw DomainError("restricted_covering: n0 out of range");
  CoveringReport rep;
  rep.n0 = n0;
  rep.seed = seed;
  const TStage& fin = S.back();
  const TStage& base = S[n0 - 1];
  rep.sqrt_eps = sqrt_down(base.eps);
  rep.scale = 2 * rep.sqrt_eps;
  rep.bound = base.N_len;

  // Endpoint lifts of each W_i at the final parameters.
  std::vector<Rational> w_lift;
  for (std::size_t i = n0; i < S.size(); ++i) {
    w_lift.push_back(centered_mod1(words::evaluate_end(S[i - 1].W, fin.alpha, fin.beta)));
  }

  // W_{n0} orbit at the final parameters, for exact nearest-point distances.
  std::vector<Rational> base_orbit;
  if (base.N_len <= 4096) {
    base_orbit = dim::normalize(words::orbit_all(base.W, fin.alpha, fin.beta, base.N_len).points());
  }
  auto nearest = [&](const Rational& p) {
    auto it = std::lower_bound(base_orbit.begin(), base_orbit.end(), p);
    Rational best = dim::circle_distance(p, it == base_orbit.end() ? base_orbit.front() : *it);
    Rational other = dim::circle_distance(p, it == base_orbit.begin() ? base_orbit.back() : *std::prev(it));
    return std::min(best, other);
  };

  IndexSet deleted = J_union_from(run, n0);
  std::vector<Rational> pts;
  auto evaluate = [&](const BigInt& j) -> bool {
    Split sp = descend(S, n0, j);
    if (sp.admissible == deleted.contains(j)) ++rep.membership_failures;
    if (!sp.admissible) return false;
    Rational drift = 0;
    for (std::size_t i = 0; i < sp.q.size(); ++i) drift += Rational(sp.q[i]) * w_lift[i];
    Rational tail_pt = words::prefix_counts(base.W, sp.tail).dot(fin.alpha, fin.beta);
    Rational direct = frac(words::prefix_counts(fin.W, j).dot(fin.alpha, fin.beta));
    if (frac(Rational(drift + tail_pt)) != direct) ++rep.consistency_failures;
    Rational ad = abs_of(drift);
    if (ad > rep.max_drift) rep.max_drift = ad;
    if (ad >= rep.sqrt_eps) ++rep.drift_violations;
    Rational dist = base_orbit.empty() ? ad : nearest(direct);
    if (dist > rep.scale) ++rep.distance_violations;
    pts.push_back(direct);
    return true;
  };

  // Block boundaries: corners of the copy-count box, with empty or full tail.
  std::size_t levels = S.size() - n0;
  Rational hi_sum = 0, lo_sum = 0;
  for (std::size_t i = 0; i < levels; ++i) {
    Rational v = Rational(*S[n0 - 1 + i].L - 1) * w_lift[i];
    if (v > 0) hi_sum += v; else lo_sum += v;
  }
  rep.corner_max_drift = std::max(hi_sum, Rational(-lo_sum));
  for (std::size_t mask = 0; mask < (std::size_t(1) << levels); ++mask) {
    BigInt j0 = 0;
    for (std::size_t i = 0; i < levels; ++i) {
      if (mask >> i & 1U) j0 += (*S[n0 - 1 + i].L - 1) * S[n0 - 1 + i].N_len;
    }
    for (const BigInt& tail : {BigInt(1), base.N_len}) {
      for (int off = -1; off <= 1; ++off) {
        BigInt j = j0 + tail + off;
        if (j < 1 || j > fin.N_len) continue;
        if (evaluate(j)) ++rep.boundary;
      }
    }
  }

  UniformBig rng(seed);
  std::size_t draws = 0;
  while (rep.sampled < samples) {
    BigInt j = rng(1, fin.N_len);
    ++draws;
    if (evaluate(j)) {
      ++rep.sampled;
    } else {
      ++rep.rejected;
    }
    if (draws > 4 * samples + 1000) break;
  }
  rep.covering_count = dim::grid_covering(pts, rep.scale);

  std::vector<Rational> free_pts;
  free_pts.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    BigInt j = rng(1, fin.N_len);
    free_pts.push_back(frac(words::prefix_counts(fin.W, j).dot(fin.alpha, fin.beta)));
  }
  rep.unrestricted_count = dim::grid_covering(free_pts, rep.scale);

  const std::string p = "covering.n0_" + std::to_string(n0) + ".";
  rep.checks.push_back(make_check(p + "sample_budget_met", rep.sampled >= samples, Severity::Asserted,
                                  std::to_string(rep.sampled), std::to_string(samples)));
  rep.checks.push_back(make_check(p + "split_consistent", rep.consistency_failures == 0 && rep.membership_failures == 0,
                                  Severity::Asserted, std::to_string(rep.consistency_failures + rep.membership_failures), "0"));
  rep.checks.push_back(make_check(p + "count_within_N_n0", rep.covering_count <= rep.bound, sev,
                                  rep.covering_count.get_str(), rep.bound.get_str()));
  rep.checks.push_back(make_check(p + "distance_within_2sqrt_eps", rep.distance_violations == 0, sev,
                                  std::to_string(rep.distance_violations), "0"));
  rep.checks.push_back(make_check(p + "sampled_drift_below_sqrt_eps", rep.drift_violations == 0, sev,
                                  dec(rep.max_drift), dec(rep.sqrt_eps)));
  rep.checks.push_back(make_check(p + "boundary_drift_below_sqrt_eps", rep.corner_max_drift < rep.sqrt_eps, sev,
                                  dec(rep.corner_max_drift), dec(rep.sqrt_eps)));
  return rep;
}

}  // namespace abset::thin

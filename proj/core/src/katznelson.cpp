#include "abset/katznelson.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace abset::katznelson {

namespace {

Rational ratio_of(const BigInt& a, const BigInt& b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

Rational max_abs(const Rational& a, const Rational& b) { return std::max(abs_of(a), abs_of(b)); }

Rational freq_drift(const CountVector& now, const CountVector& before) {
  auto [fx, fy] = words::frequencies(now);
  auto [gx, gy] = words::frequencies(before);
  return max_abs(Rational(fx - gx), Rational(fy - gy));
}

std::string dec(const Rational& q) { return to_decimal(q, 17); }

BigInt parse_positive(const std::string& tok, const std::string& whole) {
  std::string t;
  for (char ch : tok) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  }
  BigInt z;
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || z.set_str(t, 10) != 0 || z < 1) {
    throw DomainError("malformed schedule token '" + tok + "' in '" + whole + "'");
  }
  return z;
}

}  // namespace

Schedule Schedule::paper(unsigned L) {
  Schedule s;
  s.kind_ = Kind::Paper;
  s.L_ = L;
  s.gamma_ = Rational(BigInt(1), pow2(4UL * L));
  return s;
}

Schedule Schedule::list(std::vector<std::pair<BigInt, BigInt>> pairs) {
  if (pairs.empty()) throw DomainError("schedule list is empty");
  for (const auto& [M, N] : pairs) {
    if (M < 2 || N < 2) throw DomainError("schedule entries need M, N >= 2");
  }
  Schedule s;
  s.kind_ = Kind::List;
  s.pairs_ = std::move(pairs);
  return s;
}

Schedule Schedule::parse(const std::string& text) {
  if (text.rfind("paper:", 0) == 0) {
    std::string rest = text.substr(6);
    if (rest.rfind("L=", 0) != 0) throw DomainError("malformed schedule token '" + rest + "' in '" + text + "'");
    BigInt L = parse_positive(rest.substr(2), text);
    if (!L.fits_uint_p() || L > 64) throw DomainError("schedule L out of range in '" + text + "'");
    return paper(static_cast<unsigned>(L.get_ui()));
  }
  if (text.rfind("list:", 0) == 0) {
    std::vector<std::pair<BigInt, BigInt>> pairs;
    std::stringstream ss(text.substr(5));
    std::string item;
    while (std::getline(ss, item, ';')) {
      auto comma = item.find(',');
      if (comma == std::string::npos || item.find(',', comma + 1) != std::string::npos) {
        throw DomainError("malformed schedule token '" + item + "' in '" + text + "'");
      }
      BigInt M = parse_positive(item.substr(0, comma), text);
      BigInt N = parse_positive(item.substr(comma + 1), text);
      if (M < 2 || N < 2) throw DomainError("schedule token '" + item + "' needs M, N >= 2");
      pairs.emplace_back(M, N);
    }
    if (pairs.empty()) throw DomainError("malformed schedule token '' in '" + text + "'");
    return list(std::move(pairs));
  }
  auto colon = text.find(':');
  throw DomainError("malformed schedule token '" + text.substr(0, colon) + "' (expected paper:L=<k> or list:M,N;...)");
}

std::pair<BigInt, BigInt> Schedule::at(unsigned n) const {
  if (n < 1) throw DomainError("schedule stages start at 1");
  if (kind_ == Kind::Paper) {
    unsigned long a = 2UL * (n + L_);
    return {pow2(a * a), pow2((a + 1) * (a + 1))};
  }
  if (n > pairs_.size()) throw DomainError("schedule has only " + std::to_string(pairs_.size()) + " stages");
  return pairs_[n - 1];
}

std::optional<unsigned> Schedule::length() const {
  if (kind_ == Kind::Paper) return std::nullopt;
  return static_cast<unsigned>(pairs_.size());
}

std::string Schedule::describe() const {
  if (kind_ == Kind::Paper) return "paper:L=" + std::to_string(L_);
  std::string out = "list:";
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i) out += ";";
    out += pairs_[i].first.get_str() + "," + pairs_[i].second.get_str();
  }
  return out;
}

GrowthSums growth_sums(const Schedule& s, unsigned stages) {
  GrowthSums g{0, 0};
  BigInt prevN = 1;
  for (unsigned n = 1; n <= stages; ++n) {
    auto [M, N] = s.at(n);
    g.sum_M_over_N += ratio_of(M, N);
    g.sum_Nprev_over_M += ratio_of(prevN, M);
    prevN = N;
  }
  return g;
}

Rational c_coefficient(const BigInt& M, const BigInt& N) { return ratio_of(1, N * (1 + M) + 1); }

Rational d_coefficient(const BigInt& M, const BigInt& N) { return ratio_of(N, N * (1 + M) + 1); }

KStage stage1(const BigInt& M1, const BigInt& N1) {
  if (M1 < 2 || N1 < 2) throw DomainError("stage1 needs M1, N1 >= 2");
  KStage s;
  s.n = 1;
  s.M = M1;
  s.N = N1;
  // (N+1) a + M b = 1 and a + (M+1) b = 1.
  s.alpha = ratio_of(1, 1 + N1 * (M1 + 1));
  s.beta = Rational(N1) * s.alpha;
  s.eps = s.alpha;
  s.eta = s.beta;
  s.delta_shift = 0;
  s.s = s.alpha;
  s.t = s.beta;
  s.c = c_coefficient(M1, N1);
  s.d = d_coefficient(M1, N1);
  s.U = WordExpr::block(N1 + 1, M1);
  s.V = WordExpr::block(1, M1 + 1);
  s.W = WordExpr::power(WordExpr::y(), M1 + 1);
  s.stats.point_count_upper = M1 + N1 + 2;
  s.stats.sep_count_lower = N1;
  s.stats.min_gap_lower = s.eps;
  s.stats.diameter_upper = 1;
  s.stats.allowance = 0;
  s.stats.separation_verified = true;
  return s;
}

KStage advance(const KStage& prev, const BigInt& Mn, const BigInt& Nn) {
  if (Mn < 2 || Nn < 2) throw DomainError("advance needs M, N >= 2");
  KStage s;
  s.n = prev.n + 1;
  s.M = Mn;
  s.N = Nn;
  s.c = c_coefficient(Mn, Nn);
  s.d = d_coefficient(Mn, Nn);
  const CountVector& cu = prev.U.counts();
  const CountVector& cv = prev.V.counts();
  const CountVector& cw = prev.W.counts();
  // eps + c delta = c eps_{n-1}, eta + d delta = d eps_{n-1}, with the three
  // endpoint changes linear in (s, t).
  Rational a11 = Rational(cu.x) + s.c * Rational(cw.x);
  Rational a12 = Rational(cu.y) + s.c * Rational(cw.y);
  Rational a21 = Rational(cv.x) + s.d * Rational(cw.x);
  Rational a22 = Rational(cv.y) + s.d * Rational(cw.y);
  Rational r1 = s.c * prev.eps;
  Rational r2 = s.d * prev.eps;
  Rational det = a11 * a22 - a12 * a21;
  if (det == 0) throw DomainError("advance: singular closure system at stage " + std::to_string(s.n));
  s.s = (r1 * a22 - a12 * r2) / det;
  s.t = (a11 * r2 - a21 * r1) / det;
  s.alpha = prev.alpha + s.s;
  s.beta = prev.beta + s.t;
  s.eps = Rational(cu.x) * s.s + Rational(cu.y) * s.t;
  s.eta = Rational(cv.x) * s.s + Rational(cv.y) * s.t;
  s.delta_shift = Rational(cw.x) * s.s + Rational(cw.y) * s.t;
  if (s.eps <= 0 || s.eta <= 0 || s.eps >= 1 || s.eta >= 1) {
    throw DomainError("advance: eps_n or eta_n outside (0,1) at stage " + std::to_string(s.n) +
                      " (schedule too aggressive)");
  }
  s.W = WordExpr::concat(WordExpr::power(prev.V, Mn + 1), prev.W);
  s.V = WordExpr::concat(prev.U, s.W);
  s.U = WordExpr::concat({WordExpr::power(prev.U, Nn + 1), WordExpr::power(prev.V, Mn), prev.W});
  if (words::evaluate_end(s.U, s.alpha, s.beta) != 0 || words::evaluate_end(s.V, s.alpha, s.beta) != 0) {
    throw DomainError("advance: closure failed at stage " + std::to_string(s.n));
  }
  s.stats = structural_stats(s, prev);
  return s;
}

std::vector<KStage> build(const Schedule& sched, unsigned stages) {
  if (stages < 1) throw DomainError("need at least one stage");
  if (auto len = sched.length(); len && stages > *len) {
    throw DomainError("schedule " + sched.describe() + " has only " + std::to_string(*len) + " stages");
  }
  std::vector<KStage> out;
  auto [M1, N1] = sched.at(1);
  out.push_back(stage1(M1, N1));
  for (unsigned n = 2; n <= stages; ++n) {
    auto [M, N] = sched.at(n);
    out.push_back(advance(out.back(), M, N));
  }
  return out;
}

FrequencyMatrix frequency_matrix(const KStage& stage) {
  FrequencyMatrix f;
  auto [ux, uy] = words::frequencies(stage.U.counts());
  auto [vx, vy] = words::frequencies(stage.V.counts());
  f.a[0][0] = ux;
  f.a[0][1] = uy;
  f.a[1][0] = vx;
  f.a[1][1] = vy;
  f.distance = std::max(max_abs(Rational(ux - 1), uy), max_abs(vx, Rational(vy - 1)));
  return f;
}

CheckList verify_stage1(const KStage& s1) {
  CheckList out;
  Rational u = words::evaluate_end(s1.U, s1.alpha, s1.beta);
  Rational v = words::evaluate_end(s1.V, s1.alpha, s1.beta);
  out.push_back(make_check("stage1.closure_U", u == 0, Severity::Asserted, exact_string(u), "0"));
  out.push_back(make_check("stage1.closure_V", v == 0, Severity::Asserted, exact_string(v), "0"));
  out.push_back(make_check("stage1.beta_eq_N_alpha", s1.beta == Rational(s1.N) * s1.alpha, Severity::Asserted,
                           exact_string(s1.beta), exact_string(Rational(s1.N) * s1.alpha)));
  out.push_back(make_check("stage1.eps_eq_alpha", s1.eps == s1.alpha));
  return out;
}

VerificationReport verify_stage(const KStage& st, const KStage& prev, const VerifyOptions& opt) {
  VerificationReport r;
  const std::string p = "stage" + std::to_string(st.n) + ".";
  auto& out = r.checks;
  Severity lemma = opt.assert_lemma_constants ? Severity::Asserted : Severity::Reported;

  Rational u = words::evaluate_end(st.U, st.alpha, st.beta);
  Rational v = words::evaluate_end(st.V, st.alpha, st.beta);
  out.push_back(make_check(p + "closure_U", u == 0, Severity::Asserted, exact_string(u), "0"));
  out.push_back(make_check(p + "closure_V", v == 0, Severity::Asserted, exact_string(v), "0"));
  out.push_back(make_check(p + "eta_eq_N_eps", st.eta == Rational(st.N) * st.eps, Severity::Asserted,
                           dec(st.eta), dec(Rational(st.N) * st.eps)));
  out.push_back(make_check(p + "eps_positive", st.eps > 0, Severity::Asserted, dec(st.eps), "> 0"));

  // Independent re-evaluation of the one-step values.
  Rational eps_re = words::evaluate_end(prev.U, st.alpha, st.beta);
  Rational eta_re = words::evaluate_end(prev.V, st.alpha, st.beta);
  out.push_back(make_check(p + "eps_is_U_prev_endpoint", eps_re == st.eps, Severity::Asserted, dec(eps_re), dec(st.eps)));
  out.push_back(make_check(p + "eta_is_V_prev_endpoint", eta_re == st.eta, Severity::Asserted, dec(eta_re), dec(st.eta)));
  Rational rhs = prev.eps - st.delta_shift;
  Rational lhs1 = Rational(st.N + 1) * st.eps + Rational(st.M) * st.eta;
  Rational lhs2 = st.eps + Rational(st.M + 1) * st.eta;
  out.push_back(make_check(p + "recursion_U", lhs1 == rhs, Severity::Asserted, dec(lhs1), dec(rhs)));
  out.push_back(make_check(p + "recursion_V", lhs2 == rhs, Severity::Asserted, dec(lhs2), dec(rhs)));
  Rational w_prev_end = words::evaluate_end(prev.W, st.alpha, st.beta);
  Rational w_expect = frac(Rational(-prev.eps + st.delta_shift));
  out.push_back(make_check(p + "W_prev_endpoint", w_prev_end == w_expect, Severity::Asserted, dec(w_prev_end),
                           dec(w_expect)));

  r.ratio = st.eps * Rational(st.M * st.N) / prev.eps;
  r.ratio_distance = abs_of(Rational(r.ratio - 1));
  r.ratio_bound = opt.ratio_constant / Rational(st.M);
  out.push_back(make_check(p + "eps_ratio", r.ratio_distance <= r.ratio_bound, Severity::Asserted,
                           dec(r.ratio_distance), dec(r.ratio_bound)));

  BigInt vlen = prev.V.length();
  r.C = max_abs(st.s, st.t) * Rational(st.M * vlen) / prev.eps;
  r.C_prime = abs_of(st.delta_shift) * Rational(st.M) / prev.eps;
  out.push_back(make_check(p + "st_bound_constant", r.C <= opt.constant_bound, lemma, dec(r.C), dec(opt.constant_bound)));
  out.push_back(make_check(p + "delta_bound_constant", r.C_prime <= opt.constant_bound, lemma, dec(r.C_prime),
                           dec(opt.constant_bound)));

  const CountVector& cu = prev.U.counts();
  const CountVector& cv = prev.V.counts();
  const CountVector& cw = prev.W.counts();
  CountVector mu_u = (st.N + 1) * cu + st.M * cv + cw;
  CountVector mu_v = cu + (st.M + 1) * cv + cw;
  out.push_back(make_check(p + "letter_count_U", mu_u == st.U.counts()));
  out.push_back(make_check(p + "letter_count_V", mu_v == st.V.counts()));

  const BigInt& lu = prev.U.length();
  const BigInt& lv = prev.V.length();
  bool sand_v = (st.M + 2) * lv < st.V.length() && st.V.length() < (st.M + 2) * lu;
  bool sand_u = (st.N + st.M + 1) * lv < st.U.length() && st.U.length() < (st.N + st.M + 2) * lu;
  out.push_back(make_check(p + "length_sandwich_V", sand_v, Severity::Asserted, st.V.length().get_str()));
  out.push_back(make_check(p + "length_sandwich_U", sand_u, Severity::Asserted, st.U.length().get_str()));

  r.drift_U = freq_drift(st.U.counts(), cu);
  r.drift_U_bound = ratio_of(4 * st.M, st.N);
  r.drift_V = freq_drift(st.V.counts(), cv);
  r.drift_V_bound = ratio_of(16 * (prev.n >= 1 ? prev.N : BigInt(1)), st.M);
  out.push_back(make_check(p + "drift_U", r.drift_U <= r.drift_U_bound, lemma, dec(r.drift_U), dec(r.drift_U_bound)));
  out.push_back(make_check(p + "drift_V", r.drift_V <= r.drift_V_bound, lemma, dec(r.drift_V), dec(r.drift_V_bound)));

  out.push_back(make_check(p + "separation_recursion", st.stats.separation_verified, Severity::Asserted,
                           dec(prev.stats.min_gap_lower - 2 * st.stats.allowance), dec(Rational(st.N) * st.eps)));
  return r;
}

StructStats structural_stats(const KStage& st, const KStage& prev) {
  StructStats s;
  s.sep_count_lower = prev.stats.sep_count_lower * st.N;
  s.point_count_upper = prev.stats.point_count_upper * (st.M + st.N + 2);
  const CountVector& cu = prev.U.counts();
  // Every E_{n-1} point is a prefix endpoint of U_{n-1}, so it moves by at most this.
  s.allowance = abs_of(st.s) * Rational(cu.x) + abs_of(st.t) * Rational(cu.y);
  s.separation_verified =
      prev.stats.separation_verified && prev.stats.min_gap_lower - 2 * s.allowance > Rational(st.N) * st.eps;
  s.min_gap_lower = st.eps;
  s.diameter_upper = prev.eps + abs_of(st.delta_shift);
  return s;
}

std::vector<Rational> enumerate_E(const KStage& stage, const BigInt& cap) {
  if (stage.U.length() > cap) {
    throw DomainError("enumerate_E: |U_" + std::to_string(stage.n) + "| = " + stage.U.length().get_str() +
                      " exceeds cap " + cap.get_str());
  }
  auto orbit = words::orbit_all(stage.U, stage.alpha, stage.beta, cap);
  std::vector<Rational> pts = orbit.points();
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Bracket dimension_bracket(const std::vector<KStage>& stages, mpfr_prec_t prec) {
  if (stages.empty()) throw DomainError("dimension_bracket: no stages");
  BigInt lower_count = 1, upper_count = 1;
  for (const auto& st : stages) {
    lower_count *= st.N;
    upper_count *= st.M + st.N + 2;
  }
  BigFloat denom = log_of(Rational(1 / stages.back().eps), prec);
  return Bracket{divide(log_of(lower_count, prec), denom), divide(log_of(upper_count, prec), denom)};
}

}  // namespace abset::katznelson

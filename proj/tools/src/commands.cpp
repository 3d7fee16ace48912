#include "abset_cli/cli.hpp"

#include "abset/dimension.hpp"
#include "abset/diophantine.hpp"
#include "abset/katznelson.hpp"
#include "abset/thin_orbit.hpp"
#include "abset/value_expr.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace abset::cli {

namespace {

const int kSig = 20;

Json rat(const Rational& q) {
  return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}, {"decimal", to_decimal(q, kSig)}};
}

Json val(const Value& v) {
  if (v.exact) return rat(*v.exact);
  return Json{{"lo", v.iv.lo().to_decimal(kSig + 5)}, {"hi", v.iv.hi().to_decimal(kSig + 5)},
              {"decimal", v.to_decimal(kSig)}};
}

Json counts(const words::CountVector& c) { return Json{{"x", c.x.get_str()}, {"y", c.y.get_str()}}; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::string csv_row(const Rational& scale, const BigInt& count, const BigFloat& ratio) {
  return scale.get_num().get_str() + "," + scale.get_den().get_str() + "," + count.get_str() + "," +
         ratio.to_decimal(17) + "\n";
}

const char* kDimHeader = "scale_num,scale_den,count,log_ratio_decimal\n";

}  // namespace

// ---------------------------------------------------------------- katznelson

Outcome run_katznelson(const KatzOptions& o) {
  using namespace katznelson;
  Schedule sched = Schedule::parse(o.schedule);
  if (o.stages < 1) throw DomainError("katznelson: --stages must be >= 1");
  if (auto len = sched.length(); len && o.stages > *len) {
    throw DomainError("katznelson: schedule '" + sched.describe() + "' has only " + std::to_string(*len) +
                      " stages");
  }
  BigInt cap(o.enum_cap);
  auto prec = static_cast<mpfr_prec_t>(o.prec);
  bool paper = sched.kind() == Schedule::Kind::Paper;
  auto stages = build(sched, o.stages);

  Outcome out;
  out.csv = kDimHeader;
  out.results["schedule"] = sched.describe();
  GrowthSums g = growth_sums(sched, o.stages);
  out.results["growth_sums"] = Json{{"sum_M_over_N", rat(g.sum_M_over_N)},
                                    {"sum_Nprev_over_M", rat(g.sum_Nprev_over_M)},
                                    {"gamma_budget", rat(sched.gamma_budget())}};
  append(out.checks, verify_stage1(stages[0]), "stage1.");

  VerifyOptions vo;
  vo.assert_lemma_constants = paper;
  Json arr = Json::array();
  std::optional<BigFloat> prev_upper;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const KStage& st = stages[i];
    std::string p = "stage" + std::to_string(st.n) + ".";
    Json js{{"n", st.n},
            {"M", st.M.get_str()},
            {"N", st.N.get_str()},
            {"alpha", rat(st.alpha)},
            {"beta", rat(st.beta)},
            {"eps", rat(st.eps)},
            {"eta", rat(st.eta)},
            {"delta_shift", rat(st.delta_shift)},
            {"s", rat(st.s)},
            {"t", rat(st.t)},
            {"c", rat(st.c)},
            {"d", rat(st.d)},
            {"length_U", st.U.length().get_str()},
            {"length_V", st.V.length().get_str()},
            {"length_W", st.W.length().get_str()},
            {"counts_U", counts(st.U.counts())},
            {"counts_V", counts(st.V.counts())},
            {"stats",
             {{"point_count_upper", st.stats.point_count_upper.get_str()},
              {"sep_count_lower", st.stats.sep_count_lower.get_str()},
              {"min_gap_lower", rat(st.stats.min_gap_lower)},
              {"diameter_upper", rat(st.stats.diameter_upper)},
              {"allowance", rat(st.stats.allowance)},
              {"separation_verified", st.stats.separation_verified}}}};
    if (i > 0) {
      auto vr = verify_stage(st, stages[i - 1], vo);
      append(out.checks, vr.checks, p);
      js["verification"] = Json{{"ratio", rat(vr.ratio)},
                                {"ratio_distance", rat(vr.ratio_distance)},
                                {"ratio_bound", rat(vr.ratio_bound)},
                                {"C", rat(vr.C)},
                                {"C_prime", rat(vr.C_prime)},
                                {"drift_U", rat(vr.drift_U)},
                                {"drift_U_bound", rat(vr.drift_U_bound)},
                                {"drift_V", rat(vr.drift_V)},
                                {"drift_V_bound", rat(vr.drift_V_bound)}};
    }
    FrequencyMatrix fm = frequency_matrix(st);
    js["frequency_matrix"] = Json{{"a", {{rat(fm.a[0][0]), rat(fm.a[0][1])}, {rat(fm.a[1][0]), rat(fm.a[1][1])}}},
                                  {"distance_to_identity", rat(fm.distance)}};
    std::vector<KStage> prefix(stages.begin(), stages.begin() + static_cast<long>(i) + 1);
    Bracket br = dimension_bracket(prefix, prec);
    js["bracket"] = Json{{"lower", br.lower.to_decimal(kSig)}, {"upper", br.upper.to_decimal(kSig)}};
    if (prev_upper) {
      bool ok = compare(br.upper, *prev_upper) <= 0;
      out.checks.push_back(make_check(p + "bracket_upper_nonincreasing", ok,
                                      paper ? Severity::Asserted : Severity::Reported, br.upper.to_decimal(kSig),
                                      prev_upper->to_decimal(kSig)));
    }
    prev_upper = br.upper;

    if (o.enumerate && st.U.length() <= cap) {
      auto E = enumerate_E(st, cap);
      BigInt n_cov = dim::grid_covering(E, st.eps);
      BigFloat ratio = divide(log_of(n_cov, prec), log_of(Rational(1 / st.eps), prec));
      auto sep = dim::maximal_separated_subset(E, Rational(st.eps / 2));
      BigInt sep_size(static_cast<unsigned long>(sep.size()));
      Rational gap = E.size() >= 2 ? dim::min_gap(E) : Rational(1);
      std::vector<Rational> scales{2 * sqrt_lower(st.eps, 64), st.eps};
      Json rows = Json::array();
      for (const auto& row : dim::box_dim_series(E, scales, prec)) {
        rows.push_back(Json{{"scale", rat(row.scale)}, {"count", row.count.get_str()},
                            {"log_ratio", row.log_ratio.to_decimal(kSig)}});
        out.csv += csv_row(row.scale, row.count, row.log_ratio);
      }
      js["enumeration"] = Json{{"points", E.size()},
                               {"covering_at_eps", n_cov.get_str()},
                               {"log_ratio_at_eps", ratio.to_decimal(kSig)},
                               {"separated_subset_half_eps", sep.size()},
                               {"min_gap", rat(gap)},
                               {"series", rows}};
      BigInt npts(static_cast<unsigned long>(E.size()));
      out.checks.push_back(make_check(p + "points_within_count_bound", npts <= st.stats.point_count_upper,
                                      Severity::Asserted, npts.get_str(), st.stats.point_count_upper.get_str()));
      bool inside = compare(br.lower, Rational(0)) >= 0 && compare(ratio, br.lower.to_rational()) >= 0 &&
                    compare(ratio, br.upper.to_rational()) <= 0;
      out.checks.push_back(make_check(p + "measured_ratio_in_bracket", inside, Severity::Asserted,
                                      ratio.to_decimal(kSig),
                                      "[" + br.lower.to_decimal(kSig) + ", " + br.upper.to_decimal(kSig) + "]"));
      out.checks.push_back(make_check(p + "separated_subset_size", sep_size >= st.stats.sep_count_lower,
                                      Severity::Asserted, sep_size.get_str(), st.stats.sep_count_lower.get_str()));
      out.checks.push_back(make_check(p + "min_gap_vs_structural", gap >= st.stats.min_gap_lower,
                                      Severity::Asserted, to_decimal(gap, kSig),
                                      to_decimal(st.stats.min_gap_lower, kSig)));
    }
    arr.push_back(std::move(js));
  }
  out.results["stages"] = std::move(arr);
  return out;
}

// ---------------------------------------------------------------- thin-orbit

Outcome run_thin(const ThinOptions& o, bool paper_decay, std::uint64_t seed) {
  thin::ThinConfig cfg;
  cfg.m = BigInt(o.m);
  cfg.eps1 = parse_rational(o.eps1);
  cfg.decay = o.decay;
  cfg.paper_decay = paper_decay;
  cfg.stages = o.stages;
  cfg.sqrt_buffer = o.sqrt_buffer;
  cfg.bit_budget = o.bit_budget;
  cfg.validate();
  auto run = thin::build(cfg);
  const auto& S = run.stages;

  Outcome out;
  out.csv = "index,numerator,denominator,decimal64\n";
  out.results["truncated"] = run.truncated;
  out.results["decay"] = paper_decay ? "1000 n^3" : std::to_string(o.decay);
  Json arr = Json::array();
  for (std::size_t i = 0; i < S.size(); ++i) {
    const auto& st = S[i];
    Json js{{"n", st.n},
            {"alpha", rat(st.alpha)},
            {"beta", rat(st.beta)},
            {"eps", rat(st.eps)},
            {"eps_den_bits", mpz_sizeinbase(st.eps.get_den_mpz_t(), 2)},
            {"length_W", st.N_len.get_str()},
            {"k", st.k.get_str()},
            {"l", st.l.get_str()},
            {"t", rat(st.t)},
            {"d_alpha", rat(st.d_alpha)},
            {"d_beta", rat(st.d_beta)}};
    if (st.L) {
      js["L"] = st.L->get_str();
      js["sqrtL"] = st.sqrtL.get_str();
      js["length_V"] = st.V.length().get_str();
    }
    arr.push_back(std::move(js));
    append(out.checks,
           thin::verify_stage(st, i ? &S[i - 1] : nullptr, i + 1 < S.size() ? &S[i + 1] : nullptr, o.sqrt_buffer));
  }
  out.results["stages"] = std::move(arr);
  append(out.checks, thin::verify_drift(run));

  std::vector<Rational> dens;
  append(out.checks, thin::verify_densities(run, &dens), "densities.");
  Json dj = Json::array();
  for (unsigned n = 0; n < dens.size(); ++n) {
    auto d = thin::deleted_sets(run, n);
    dj.push_back(Json{{"n", n},
                      {"upper_density_J_above", rat(dens[n])},
                      {"density_J_above", rat(d.density_above)},
                      {"upper_density_J_n", rat(d.upper_density_J_n)}});
  }
  out.results["densities"] = std::move(dj);

  Json cov = Json::array();
  auto covering = [&](unsigned n0, Severity sev) {
    auto c = thin::restricted_covering(run, n0, o.samples, seed, sev);
    cov.push_back(Json{{"n0", c.n0},
                       {"severity", sev == Severity::Asserted ? "asserted" : "reported"},
                       {"seed", std::to_string(c.seed)},
                       {"scale", rat(c.scale)},
                       {"sqrt_eps", rat(c.sqrt_eps)},
                       {"sampled", c.sampled},
                       {"boundary", c.boundary},
                       {"rejected", c.rejected},
                       {"max_drift", rat(c.max_drift)},
                       {"corner_max_drift", rat(c.corner_max_drift)},
                       {"distance_violations", c.distance_violations},
                       {"drift_violations", c.drift_violations},
                       {"consistency_failures", c.consistency_failures},
                       {"membership_failures", c.membership_failures},
                       {"covering_count", c.covering_count.get_str()},
                       {"bound", c.bound.get_str()},
                       {"unrestricted_count", c.unrestricted_count.get_str()}});
    append(out.checks, c.checks);
  };
  for (unsigned n0 : o.n0) covering(n0, Severity::Asserted);
  for (unsigned n0 : o.n0_reported) covering(n0, Severity::Reported);
  out.results["covering"] = std::move(cov);

  auto range = split(o.orbit_range, ':');
  if (range.size() != 2) throw DomainError("thin-orbit: --orbit-range must be first:last");
  BigInt first(range[0]), last(range[1]);
  if (last > S.back().N_len) last = S.back().N_len;
  if (first <= last) {
    out.csv = words::orbit_csv(words::orbit_range(S.back().W, S.back().alpha, S.back().beta, first, last));
  }
  return out;
}

// ---------------------------------------------------------------- dioph

Outcome run_dioph(const DiophOptions& o) {
  using namespace dioph;
  auto prec = static_cast<mpfr_prec_t>(o.prec);
  if (prec < 128) throw DomainError("dioph: --prec must be at least 128 bits");
  Value alpha = parse_value(o.alpha, prec);
  Value beta = parse_value(o.beta, prec);
  ProbeParams pp{parse_rational(o.s), parse_rational(o.t), parse_rational(o.r)};
  pp.validate();
  Rational tol = parse_rational(o.tol);
  std::vector<std::string> scans = split(o.scan, ',');
  auto wants = [&](const std::string& k) {
    return std::find(scans.begin(), scans.end(), "all") != scans.end() ||
           std::find(scans.begin(), scans.end(), k) != scans.end();
  };
  for (const auto& s : scans) {
    static const std::vector<std::string> known{"all", "minima", "ratio", "subadditive", "orbit",
                                                "no-close", "dichotomy", "probe"};
    if (std::find(known.begin(), known.end(), s) == known.end()) throw DomainError("dioph: unknown scan '" + s + "'");
  }

  Outcome out;
  MinimaScan sc = minima_sequence(alpha, beta, o.nmax);
  out.results["alpha"] = val(alpha);
  out.results["beta"] = val(beta);
  out.results["records"] = sc.size();
  out.results["zero_at"] = sc.zero_at ? Json(*sc.zero_at) : Json(nullptr);
  auto minimal = sc.minimal_indices();
  out.results["minimal_indices"] = minimal;
  out.csv = "n,a,b,delta_decimal,minimal\n";
  for (const auto& r : sc.records) {
    out.csv += std::to_string(r.n) + "," + r.u.a.get_str() + "," + r.u.b.get_str() + "," + r.delta.to_decimal(17) +
               "," + (r.minimal ? "1" : "0") + "\n";
  }
  if (wants("minima")) {
    Json mj = Json::array();
    for (auto n : minimal) {
      const auto& r = sc.at(n);
      mj.push_back(Json{{"n", n}, {"delta", val(r.delta)}, {"u", {r.u.a.get_str(), r.u.b.get_str()}}});
    }
    out.results["minima"] = std::move(mj);
  }
  if (wants("ratio")) {
    RatioScan rs = integer_ratio_scan(sc, tol);
    Json v = Json::array();
    for (const auto& h : rs.violations) v.push_back(Json{{"i", h.i}, {"j", h.j}, {"ell", h.ell.get_str()}});
    out.results["integer_ratio"] = Json{{"pairs", rs.pairs},
                                        {"hits", rs.hits.size()},
                                        {"violations", v},
                                        {"early_stop", rs.early_stop ? Json(*rs.early_stop) : Json(nullptr)}};
    // Dependent inputs can hit exact relations; independence is the lemma's hypothesis.
    Severity sev = sc.zero_at ? Severity::Reported : Severity::Asserted;
    out.checks.push_back(make_check("dioph.integer_ratio_lemma", rs.violations.empty(), sev,
                                    std::to_string(rs.violations.size()) + " violations in " +
                                        std::to_string(rs.hits.size()) + " hits",
                                    "tol " + to_decimal(tol, 6)));
  }
  if (wants("subadditive")) append(out.checks, subadditivity_check(alpha, beta, sc, sc.size()), "dioph.");
  if (wants("no-close")) {
    Json nj = Json::array();
    std::size_t bad = 0;
    for (auto n : minimal) {
      const Value& dn = sc.at(n).delta;
      if (dn.exact && *dn.exact == 0) continue;
      auto v = no_close_minima_check(sc, pp, n);
      bad += v.failures.size();
      nj.push_back(Json{{"n", n},
                        {"N", v.N.get_str()},
                        {"covered_upto", v.covered_upto},
                        {"qualifying", v.qualifying},
                        {"pairs_checked", v.pairs_checked},
                        {"verdict", v.verdict}});
    }
    out.results["no_close_minima"] = std::move(nj);
    out.checks.push_back(make_check("dioph.no_close_minima", bad == 0, sc.zero_at ? Severity::Reported : Severity::Asserted,
                                    std::to_string(bad) + " inconsistent pairs"));
  }
  std::optional<ValueOrbit> orbit;
  if (wants("orbit") || wants("dichotomy") || wants("probe")) {
    orbit = value_orbit(words::parse_text(o.word), alpha, beta, o.orbit_points);
  }
  if (wants("orbit")) {
    DistanceReport dr = orbit_distance_check(*orbit, sc);
    out.results["orbit_distance"] = Json{{"points", orbit->size()},
                                         {"pairs", dr.pairs},
                                         {"equalities", dr.equalities},
                                         {"violations", dr.violations.size()}};
    out.checks.push_back(make_check("dioph.orbit_distance_lower_bound", dr.violations.empty(), Severity::Asserted,
                                    std::to_string(dr.violations.size()) + " of " + std::to_string(dr.pairs),
                                    "d(t_i,t_j) >= delta_|i-j|"));
  }
  if (wants("dichotomy")) {
    auto pairs = qualifying_pairs(sc, pp);
    Json dj = Json::array();
    std::size_t violations = 0, sep_fail = 0, refused = 0;
    for (auto [n, m] : pairs) {
      Dichotomy d = gap_dichotomy(*orbit, sc, n, m, pp);
      if (d.refused) ++refused;
      violations += d.violations.size();
      sep_fail += d.separation_failures.size();
      dj.push_back(Json{{"n", n},
                        {"m", m},
                        {"N", d.N.get_str()},
                        {"refused", d.refused ? Json(d.reason) : Json(nullptr)},
                        {"pairs", d.pairs},
                        {"separated", d.separated},
                        {"clustered", d.clustered},
                        {"violations", d.violations.size()},
                        {"separation_failures", d.separation_failures.size()}});
    }
    out.results["gap_dichotomy"] = Json{{"qualifying_pairs", pairs.size()}, {"refused", refused}, {"runs", dj}};
    out.checks.push_back(make_check("dioph.gap_dichotomy_no_violation", violations == 0, Severity::Asserted,
                                    std::to_string(violations) + " violations over " + std::to_string(pairs.size()) +
                                        " qualifying pairs"));
    out.checks.push_back(make_check("dioph.gap_dichotomy_separation", sep_fail == 0, Severity::Asserted,
                                    std::to_string(sep_fail) + " pairs below delta_m"));
  }
  if (wants("probe")) {
    IndexSet U = IndexSet::interval(BigInt(1), BigInt(static_cast<unsigned long>(orbit->size())));
    ProbeReport pr = assouad_lower_probe(*orbit, U, sc, pp, minimal);
    Json cj = Json::array();
    for (const auto& c : pr.cases) {
      cj.push_back(Json{{"n", c.n},
                        {"status", c.status},
                        {"N", c.N.get_str()},
                        {"m", c.m},
                        {"rho_N", rat(c.rho_N)},
                        {"count", c.count.get_str()},
                        {"bound", rat(c.bound)},
                        {"window_center", rat(c.window_center)},
                        {"window_radius", rat(c.window_radius)},
                        {"exponent", rat(c.exponent)}});
    }
    out.results["assouad_probe"] = Json{{"s", rat(pp.s)},
                                        {"t", rat(pp.t)},
                                        {"r", rat(pp.r)},
                                        {"implied_exponent", rat(pr.implied_exponent)},
                                        {"implied_exponent_limit", rat(pr.implied_exponent_limit)},
                                        {"cases", cj}};
  }
  return out;
}

// ---------------------------------------------------------------- dim

namespace {

std::vector<Rational> load_fixture(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw DomainError("dim: fixture must be kind:arg, got '" + spec + "'");
  std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  std::vector<Rational> pts;
  if (kind == "inverse" || kind == "grid") {
    BigInt K(arg);
    if (K < 1 || K > 10000000) throw DomainError("dim: fixture size out of range in '" + spec + "'");
    unsigned long k = K.get_ui();
    for (unsigned long i = kind == "inverse" ? 1 : 0; kind == "inverse" ? i <= k : i < k; ++i) {
      pts.push_back(kind == "inverse" ? Rational(BigInt(1), BigInt(i)) : Rational(BigInt(i), BigInt(k)));
    }
    for (auto& q : pts) q.canonicalize();
  } else if (kind == "points") {
    for (const auto& t : split(arg, ',')) pts.push_back(parse_rational(t));
  } else if (kind == "file") {
    std::ifstream in(arg);
    if (!in) throw DomainError("dim: cannot read '" + arg + "'");
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
      pts.push_back(parse_rational(line));
    }
  } else {
    throw DomainError("dim: unknown fixture kind '" + kind + "'");
  }
  return pts;
}

}  // namespace

Outcome run_dim(const DimOptions& o) {
  auto prec = static_cast<mpfr_prec_t>(o.prec);
  auto pts = dim::normalize(load_fixture(o.fixture));
  std::vector<Rational> scales;
  for (const auto& t : split(o.scales, ',')) scales.push_back(parse_rational(t));
  std::vector<std::pair<Rational, Rational>> windows;
  for (const auto& w : split(o.windows, ';')) {
    auto parts = split(w, ':');
    if (parts.size() != 2) throw DomainError("dim: window '" + w + "' must be R:delta");
    windows.emplace_back(parse_rational(parts[0]), parse_rational(parts[1]));
  }

  Outcome out;
  out.csv = kDimHeader;
  out.results["points"] = pts.size();
  if (pts.size() >= 2) out.results["min_gap"] = rat(dim::min_gap(pts));
  Json rows = Json::array();
  for (const auto& row : dim::box_dim_series(pts, scales, prec)) {
    Json r{{"scale", rat(row.scale)}, {"count", row.count.get_str()}, {"log_ratio", row.log_ratio.to_decimal(kSig)}};
    if (row.slope) r["slope"] = row.slope->to_decimal(kSig);
    rows.push_back(std::move(r));
    out.csv += csv_row(row.scale, row.count, row.log_ratio);
    if (pts.size() <= 1000) {
      std::size_t opt = dim::optimal_covering(pts, row.scale);
      BigInt optz(static_cast<unsigned long>(opt));
      bool ok = optz <= row.count && (Rational(1 / row.scale).get_den() != 1 || row.count <= 2 * optz);
      out.checks.push_back(make_check("dim.grid_vs_optimal_" + exact_string(row.scale), ok, Severity::Asserted,
                                      row.count.get_str(), "optimal " + optz.get_str()));
    }
  }
  out.results["series"] = std::move(rows);
  Json wj = Json::array();
  for (const auto& w : dim::assouad_probe_windows(pts, windows, prec)) {
    wj.push_back(Json{{"R", rat(w.R)},
                      {"delta", rat(w.delta)},
                      {"best_count", w.best_count.get_str()},
                      {"best_start", rat(w.best_start)},
                      {"probe", w.probe.to_decimal(kSig)}});
  }
  out.results["windows"] = std::move(wj);
  return out;
}

// ---------------------------------------------------------------- verify-all

Outcome run_verify_all(const RunConfig& cfg) {
  if (cfg.profile != "desk") throw DomainError("verify-all: unknown profile '" + cfg.profile + "' (only 'desk')");
  Outcome out;
  auto section = [&](const std::string& name, Outcome o) {
    out.results[name] = std::move(o.results);
    append(out.checks, o.checks, name + ".");
  };
  section("katznelson", run_katznelson(KatzOptions{}));
  ThinOptions t;
  t.n0 = {2};
  t.n0_reported = {1};
  section("thin_orbit", run_thin(t, false, cfg.seed));
  section("dioph", run_dioph(DiophOptions{}));
  return out;
}

}  // namespace abset::cli

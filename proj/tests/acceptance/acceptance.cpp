// Acceptance run: one PASS/FAIL line per criterion, with measured values and
// wall-clock time against the stated budget.

#include "abset/dimension.hpp"
#include "abset/diophantine.hpp"
#include "abset/katznelson.hpp"
#include "abset/thin_orbit.hpp"
#include "abset/value_expr.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

using namespace abset;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

Rational Q(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

int failures = 0;

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  Clock::time_point start = Clock::now();
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    notes.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { notes.push_back("info " + what); }

  void finish() {
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    char tbuf[64];
    std::snprintf(tbuf, sizeof tbuf, "%.2fs < %.0fs", secs, budget_s);
    require(secs < budget_s, std::string("runtime ") + tbuf);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << tbuf << ")\n";
    for (const auto& n : notes) std::cout << "    " << n << "\n";
    if (!ok) ++failures;
  }
};

std::string dec(const Rational& q, int sig = 8) { return to_decimal(q, sig); }
std::string dec(const BigFloat& f, int sig = 8) { return f.to_decimal(sig); }

const Check* find(const CheckList& c, const std::string& name) {
  for (const auto& x : c)
    if (x.name == name) return &x;
  return nullptr;
}

std::vector<katznelson::KStage> ds1_stages;

void criterion1() {
  Criterion c{1, "katznelson exactness on (32,64),(256,1024)", 1};
  using namespace katznelson;
  ds1_stages = build(Schedule::parse("list:32,64;256,1024"), 2);
  const auto& S = ds1_stages;
  for (const auto& st : S) {
    std::string n = std::to_string(st.n);
    c.require(words::evaluate_end(st.U, st.alpha, st.beta) == 0, "U_" + n + "(alpha_" + n + ", beta_" + n + ") = 0");
    c.require(words::evaluate_end(st.V, st.alpha, st.beta) == 0, "V_" + n + "(alpha_" + n + ", beta_" + n + ") = 0");
  }
  c.require(S[1].eta == Rational(S[1].N) * S[1].eps, "eta_2 = N_2 eps_2");
  auto rep = verify_stage(S[1], S[0]);
  Rational bound = Rational(16) / Rational(S[1].M);
  c.require(rep.ratio_distance <= bound,
            "|eps_2 M_2 N_2 / eps_1 - 1| = " + dec(rep.ratio_distance) + " <= 16/M_2 = " + dec(bound));
  c.finish();
}

void criterion2() {
  Criterion c{2, "dimension bracket, enumerated E_2", 60};
  using namespace katznelson;
  const auto& st = ds1_stages[1];
  auto E = enumerate_E(st, 1000000);
  c.require(BigInt(static_cast<unsigned long>(E.size())) <= BigInt(98 * 1282),
            "|E_2| = " + std::to_string(E.size()) + " <= 125636");
  BigInt n = dim::grid_covering(E, st.eps);
  BigFloat ratio = divide(log_of(n), log_of(Rational(1 / st.eps)));
  Bracket br = dimension_bracket(ds1_stages);
  c.require(compare(ratio, br.lower.to_rational()) >= 0 && compare(ratio, br.upper.to_rational()) <= 0,
            "log N(E_2, eps_2)/log(1/eps_2) = " + dec(ratio) + " in [" + dec(br.lower) + ", " + dec(br.upper) + "]");
  auto sep = dim::maximal_separated_subset(E, st.eps / 2);
  c.require(dim::is_separated(sep, st.eps / 2) && sep.size() >= 65536,
            "(eps_2/2)-separated subset of size " + std::to_string(sep.size()) + " >= 65536");
  c.finish();
}

void criterion3() {
  Criterion c{3, "dimension bracket, paper schedule L=2 to n=4", 10};
  using namespace katznelson;
  auto S = build(Schedule::paper(2), 4);
  std::optional<Bracket> prev;
  for (std::size_t n = 1; n <= S.size(); ++n) {
    std::vector<KStage> prefix(S.begin(), S.begin() + static_cast<long>(n));
    Bracket br = dimension_bracket(prefix);
    c.info("n=" + std::to_string(n) + " bracket [" + dec(br.lower, 10) + ", " + dec(br.upper, 10) + "]");
    if (prev) {
      c.require(compare(br.lower, prev->lower) <= 0 && compare(br.upper, prev->upper) <= 0,
                "bracket endpoints non-increasing at n=" + std::to_string(n));
    }
    if (n == S.size()) {
      c.require(compare(br.lower, Q(1, 2)) >= 0 && compare(br.upper, Q(56, 100)) <= 0,
                "n=4 endpoints within [0.50, 0.56]");
    }
    prev = br;
  }
  Rational worst = 0, worst_drift = 0;
  bool drift_ok = true;
  for (std::size_t i = 0; i < S.size(); ++i) {
    worst = std::max(worst, frequency_matrix(S[i]).distance);
    if (i > 0) {
      auto r = verify_stage(S[i], S[i - 1]);
      drift_ok = drift_ok && r.drift_U <= r.drift_U_bound;
      worst_drift = std::max(worst_drift, Rational(r.drift_U / r.drift_U_bound));
    }
  }
  c.require(worst < Q(1, 10), "max |A_n - I| = " + dec(worst) + " < 0.1");
  c.require(drift_ok, "||mu(U_n) - mu(U_{n-1})|| <= 4 M_n/N_n exactly (max ratio to bound " + dec(worst_drift) + ")");
  c.finish();
}

void criterion4() {
  Criterion c{4, "thin-orbit desk run (m=10, eps_1=2^-40, rho=4, 3 stages)", 120};
  using namespace thin;
  ThinConfig cfg;
  ThinRun run = build(cfg);
  const auto& S = run.stages;
  c.require(S.size() == 3 && run.truncated.empty(), "3 stages built");
  bool values = true, preserved = true, balance = true;
  for (std::size_t i = 0; i < S.size(); ++i) {
    auto ch = verify_stage(S[i], i ? &S[i - 1] : nullptr, i + 1 < S.size() ? &S[i + 1] : nullptr);
    std::string p = "stage" + std::to_string(S[i].n) + ".";
    values = values && find(ch, p + "W_value_eq_eps")->passed;
    balance = balance && find(ch, p + "symbol_balance")->passed;
    if (i + 1 < S.size()) preserved = preserved && find(ch, p + "preserved_one_step")->passed;
  }
  c.require(values, "W_n(alpha_n, beta_n) = eps_n exactly, n = 1,2,3");
  c.require(preserved, "W_n(alpha_{n+1}, beta_{n+1}) = eps_n exactly");
  c.require(balance, "symbol balance at every stage");

  auto rep = restricted_covering(run, 1, 100000, 1, Severity::Reported);
  c.require(rep.sampled >= 100000, std::to_string(rep.sampled) + " sampled admissible indices plus " +
                                       std::to_string(rep.boundary) + " block-boundary indices");
  c.require(rep.covering_count <= rep.bound, "restricted covering at 2 eps_1^(1/2): " + rep.covering_count.get_str() +
                                                 " <= N_1 = " + rep.bound.get_str());
  c.require(rep.drift_violations == 0 && rep.corner_max_drift < rep.sqrt_eps,
            "drift W'(alpha,beta) < eps_1^(1/2): max sampled " + dec(rep.max_drift, 4) + ", max boundary " +
                dec(rep.corner_max_drift, 4) + " vs " + dec(rep.sqrt_eps, 4));
  std::vector<Rational> d;
  auto dc = verify_densities(run, &d);
  std::string ds;
  for (const auto& q : d) ds += (ds.empty() ? "" : ", ") + dec(q, 4);
  c.require(all_asserted_pass(dc), "upper densities of J_{>n} strictly decreasing: " + ds);

  auto rep2 = restricted_covering(run, 2, 100000, 1);
  c.info("n0 = 2: covering " + rep2.covering_count.get_str() + " <= N_2 = " + rep2.bound.get_str() +
         ", max boundary drift " + dec(rep2.corner_max_drift, 4) + " vs " + dec(rep2.sqrt_eps, 4) +
         (all_asserted_pass(rep2.checks) ? " (holds)" : " (fails)"));
  c.finish();
}

void criterion5() {
  Criterion c{5, "diophantine scans at (sqrt2-1, sqrt3-1), 256 bits, n <= 500", 10};
  using namespace dioph;
  Value a = parse_value("sqrt(2)-1", 256), b = parse_value("sqrt(3)-1", 256);
  MinimaScan sc = minima_sequence(a, b, 500);
  RatioScan rs = integer_ratio_scan(sc, Rational(BigInt(1), pow2(64)));
  c.require(rs.violations.empty(), "integer-ratio lemma: " + std::to_string(rs.violations.size()) + " violations in " +
                                       std::to_string(rs.hits.size()) + " near-integer ratios");
  ValueOrbit orbit = value_orbit(words::parse_text("((x y) ^ 250)"), a, b, 500);
  DistanceReport dr = orbit_distance_check(orbit, sc);
  c.require(dr.violations.empty(), "d(t_i,t_j) >= delta_|i-j|: " + std::to_string(dr.violations.size()) +
                                       " violations over " + std::to_string(dr.pairs) + " pairs");
  ProbeParams pp;
  auto pairs = qualifying_pairs(sc, pp);
  std::size_t viol = 0;
  for (auto [n, m] : pairs) viol += gap_dichotomy(orbit, sc, n, m, pp).violations.size();
  c.require(viol == 0, "gap dichotomy: " + std::to_string(viol) + " violations over " + std::to_string(pairs.size()) +
                           " qualifying (n,m) pairs");
  c.finish();
}

void criterion6() {
  Criterion c{6, "estimator calibration on {1/k : k <= 10^5}", 60};
  std::vector<Rational> E;
  for (unsigned long k = 1; k <= 100000; ++k) E.push_back(frac(Rational(BigInt(1), BigInt(k))));
  E = dim::normalize(E);
  std::vector<Rational> scales;
  for (unsigned j = 4; j <= 8; ++j) scales.push_back(Rational(BigInt(1), pow2(2 * j)));
  auto rows = dim::box_dim_series(E, scales);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double r = rows[i].log_ratio.to_double();
    std::string what = "j=" + std::to_string(i + 4) + ": N = " + rows[i].count.get_str() + ", log N/log(1/rho) = " +
                       dec(rows[i].log_ratio, 6) + " within 0.5 +- 0.05";
    c.require(r >= 0.45 && r <= 0.55, what);
    if (rows[i].slope) c.info("j=" + std::to_string(i + 4) + ": consecutive-scale slope " + dec(*rows[i].slope, 6));
  }
  std::vector<std::pair<Rational, Rational>> windows;
  for (long m : {16, 64, 256}) windows.emplace_back(Rational(1, m), Rational(1, m));
  for (const auto& w : dim::assouad_probe_windows(E, windows)) {
    c.require(w.probe.to_double() >= 0.8, "window probe R = delta = " + exact_string(w.R) + ": " + dec(w.probe, 6) +
                                                " >= 0.8 (count " + w.best_count.get_str() + ")");
  }
  dioph::ProbeParams pp;
  c.require(dioph::implied_exponent_limit(pp) == Q(1, 4),
            "lower probe implied exponent at (s,t,r) = (1/2-, 2, 1/2): " + exact_string(dioph::implied_exponent_limit(pp)) +
                " (at s = 49/100: " + exact_string(dioph::implied_exponent(pp)) + ")");
  c.finish();
}

int run_in(const fs::path& dir, const std::string& abset) {
  fs::create_directories(dir);
  std::string cmd = "cd '" + dir.string() + "' && '" + fs::absolute(abset).string() +
                    "' verify-all --profile desk --seed 1 --out report.json --quiet 2> stderr.txt";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

void criterion7(const std::string& abset, const fs::path& work) {
  Criterion c{7, "determinism of verify-all --profile desk", 60};
  if (abset.empty()) {
    c.require(false, "path to the abset binary not given (--abset)");
    c.finish();
    return;
  }
  fs::remove_all(work);
  int rc1 = run_in(work / "a", abset);
  int rc2 = run_in(work / "b", abset);
  c.require(rc1 == 0 && rc2 == 0, "exit codes " + std::to_string(rc1) + ", " + std::to_string(rc2));
  std::string r1 = slurp(work / "a" / "report.json"), r2 = slurp(work / "b" / "report.json");
  c.require(!r1.empty() && r1 == r2, "reports byte-identical (" + std::to_string(r1.size()) + " bytes)");
  c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string abset;
  std::string work = (fs::temp_directory_path() / "abset_acceptance").string();
  app.add_option("--abset", abset, "Path to the abset executable");
  app.add_option("--workdir", work, "Scratch directory for criterion 7");
  CLI11_PARSE(app, argc, argv);

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7(abset, work);
  std::cout << (7 - failures) << "/7 criteria passed\n";
  return failures == 0 ? 0 : 1;
}

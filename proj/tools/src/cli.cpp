#include "abset_cli/cli.hpp"

#include "abset/numeric.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace abset::cli {

const char* const kVersion = ABSET_VERSION;

Json config_json(const RunConfig& c) {
  Json j{{"subcommand", c.subcommand},
         {"seed", std::to_string(c.seed)},
         {"paper_faithful", c.paper_faithful},
         {"out", c.out},
         {"csv", c.csv}};
  if (c.subcommand == "katznelson") {
    const auto& k = c.katz;
    j["katznelson"] = Json{{"schedule", k.schedule},
                           {"stages", k.stages},
                           {"enumerate", k.enumerate},
                           {"enum_cap", k.enum_cap},
                           {"prec", k.prec}};
  } else if (c.subcommand == "thin-orbit") {
    const auto& t = c.thin;
    j["thin_orbit"] = Json{{"m", t.m},
                           {"eps1", t.eps1},
                           {"decay", t.decay},
                           {"stages", t.stages},
                           {"sqrt_buffer", t.sqrt_buffer},
                           {"bit_budget", t.bit_budget},
                           {"n0", t.n0},
                           {"n0_reported", t.n0_reported},
                           {"samples", t.samples},
                           {"orbit_range", t.orbit_range}};
  } else if (c.subcommand == "dioph") {
    const auto& d = c.dioph;
    j["dioph"] = Json{{"alpha", d.alpha}, {"beta", d.beta},  {"prec", d.prec},
                      {"nmax", d.nmax},   {"scan", d.scan},  {"tol", d.tol},
                      {"word", d.word},   {"orbit_points", d.orbit_points},
                      {"s", d.s},         {"t", d.t},        {"r", d.r}};
  } else if (c.subcommand == "dim") {
    const auto& d = c.dim;
    j["dim"] = Json{{"fixture", d.fixture}, {"scales", d.scales}, {"windows", d.windows}, {"prec", d.prec}};
  } else if (c.subcommand == "verify-all") {
    j["profile"] = c.profile;
  }
  return j;
}

std::string render_report(const RunConfig& cfg, const Outcome& o) {
  Json checks = Json::array();
  std::size_t asserted = 0, asserted_failed = 0, reported_failed = 0;
  for (const auto& c : o.checks) {
    bool a = c.severity == Severity::Asserted;
    asserted += a;
    if (!c.passed) (a ? asserted_failed : reported_failed) += 1;
    checks.push_back(Json{{"name", c.name},
                          {"passed", c.passed},
                          {"severity", a ? "asserted" : "reported"},
                          {"measured", c.measured},
                          {"bound", c.bound}});
  }
  Json report{{"tool", "abset"},
              {"version", kVersion},
              {"config", config_json(cfg)},
              {"results", o.results},
              {"checks", checks},
              {"summary",
               {{"checks", o.checks.size()},
                {"asserted", asserted},
                {"asserted_failed", asserted_failed},
                {"reported_failed", reported_failed},
                {"passed", asserted_failed == 0}}}};
  return report.dump(2) + "\n";
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    if (cfg.paper_faithful && cfg.subcommand == "verify-all") {
      throw DomainError("verify-all: --paper-faithful is not part of the desk profile");
    }
    if (cfg.subcommand == "katznelson") {
      o = run_katznelson(cfg.katz);
    } else if (cfg.subcommand == "thin-orbit") {
      if (cfg.paper_faithful) {
        err << "warning: --paper-faithful sets rho(n) = 1000 n^3; stage 2 already carries ~"
            << 8000 * mpz_sizeinbase(parse_rational(cfg.thin.eps1).get_den_mpz_t(), 2)
            << "-bit denominators and later stages stop at the bit budget\n";
      }
      o = run_thin(cfg.thin, cfg.paper_faithful, cfg.seed);
    } else if (cfg.subcommand == "dioph") {
      o = run_dioph(cfg.dioph);
    } else if (cfg.subcommand == "dim") {
      o = run_dim(cfg.dim);
    } else if (cfg.subcommand == "verify-all") {
      o = run_verify_all(cfg);
    } else {
      throw DomainError("unknown subcommand '" + cfg.subcommand + "'");
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  std::string report = render_report(cfg, o);
  try {
    bool out_is_csv = ends_with(cfg.out, ".csv");
    if (!cfg.out.empty()) write_file(cfg.out, out_is_csv ? o.csv : report);
    if (!cfg.csv.empty()) write_file(cfg.csv, o.csv);
    if ((cfg.out.empty() || out_is_csv) && !cfg.quiet) out << report;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  auto failed = failed_assertions(o.checks);
  if (!failed.empty()) {
    err << "assertion failed:";
    for (const auto& f : failed) err << " " << f;
    err << "\n";
    return 2;
  }
  return 0;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact constructions and Diophantine scans for alpha-beta orbits on the circle", "abset"};
  app.set_version_flag("--version", std::string("abset ") + kVersion);
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "64-bit seed for sampled indices");
  app.add_option("--out", cfg.out, "Report path (JSON; a .csv path receives the table instead)");
  app.add_option("--csv", cfg.csv, "Table output path");
  app.add_flag("--paper-faithful", cfg.paper_faithful,
               "paper:L=2 schedule for katznelson and rho(n) = 1000 n^3 for thin-orbit (slow)");
  app.add_flag("--quiet", cfg.quiet, "Do not print the report to stdout");

  auto* k = app.add_subcommand("katznelson", "Nested closed orbits U_n, V_n and the dimension bracket");
  auto* k_sched = k->add_option("--schedule", cfg.katz.schedule, "paper:L=<k> or list:M1,N1;M2,N2;...");
  auto* k_stages = k->add_option("--stages", cfg.katz.stages, "Number of stages");
  k->add_option("--enum-cap", cfg.katz.enum_cap, "Enumerate E_n only when |U_n| is at most this");
  k->add_flag("--enumerate,!--no-enumerate", cfg.katz.enumerate, "Enumerate E_n when small enough");
  k->add_option("--prec", cfg.katz.prec, "MPFR precision for logarithms");

  auto* t = app.add_subcommand("thin-orbit", "Orbit with vanishing box dimension off thin index sets");
  t->add_option("--m", cfg.thin.m, "W_1 = x^m y^m");
  t->add_option("--eps1", cfg.thin.eps1, "eps_1 as p/q, a^-b or a decimal");
  t->add_option("--decay", cfg.thin.decay, "eps_{n+1} = eps_n^decay");
  t->add_option("--stages", cfg.thin.stages, "Number of stages");
  t->add_option("--sqrt-buffer", cfg.thin.sqrt_buffer, "b in (L + b ceil(sqrt L)) N_n");
  t->add_option("--bit-budget", cfg.thin.bit_budget, "Refuse stages whose eps needs more bits");
  t->add_option("--n0", cfg.thin.n0, "Covering levels (asserted)")->expected(0, 16);
  t->add_option("--n0-reported", cfg.thin.n0_reported, "Covering levels (informational)")->expected(0, 16);
  t->add_option("--samples", cfg.thin.samples, "Random admissible indices per covering run");
  t->add_option("--orbit-range", cfg.thin.orbit_range, "first:last orbit indices for the table");

  auto* d = app.add_subcommand("dioph", "Minima delta_n and the close-minima lemmas");
  d->add_option("--alpha", cfg.dioph.alpha, "Expression: sqrt(k), rationals, decimals, + - * / ^");
  d->add_option("--beta", cfg.dioph.beta, "Expression for beta");
  d->add_option("--prec", cfg.dioph.prec, "Working precision in bits (>= 128)");
  d->add_option("--nmax", cfg.dioph.nmax, "Scan n = 1..nmax");
  d->add_option("--scan", cfg.dioph.scan, "all, or a comma list of minima,ratio,subadditive,orbit,no-close,dichotomy,probe");
  d->add_option("--tol", cfg.dioph.tol, "Integrality tolerance for delta ratios");
  d->add_option("--word", cfg.dioph.word, "Orbit word in the text grammar");
  d->add_option("--orbit-points", cfg.dioph.orbit_points, "Orbit points t_1..t_K");
  d->add_option("--s", cfg.dioph.s, "Probe parameter s");
  d->add_option("--t", cfg.dioph.t, "Probe parameter t");
  d->add_option("--r", cfg.dioph.r, "Probe parameter r");

  auto* m = app.add_subcommand("dim", "Covering series and window probes for a point set");
  m->add_option("--fixture", cfg.dim.fixture, "inverse:K, grid:n, points:p1,p2,... or file:path");
  m->add_option("--scales", cfg.dim.scales, "Comma list of strictly decreasing scales");
  m->add_option("--windows", cfg.dim.windows, "Semicolon list of R:delta pairs");
  m->add_option("--prec", cfg.dim.prec, "MPFR precision for logarithms");

  auto* v = app.add_subcommand("verify-all", "Desk-scale run of every module");
  v->add_option("--profile", cfg.profile, "Only 'desk'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }
  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  if (cfg.paper_faithful && cfg.subcommand == "katznelson") {
    if (k_sched->count() == 0) cfg.katz.schedule = "paper:L=2";
    if (k_stages->count() == 0) cfg.katz.stages = 4;
    err << "warning: --paper-faithful selects paper:L=2 with 4 stages; stage lengths grow doubly exponentially and E_n is "
           "not enumerated\n";
  }
  return run(cfg, out, err);
}

}  // namespace abset::cli

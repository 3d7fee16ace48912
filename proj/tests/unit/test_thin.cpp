#include "abset/dimension.hpp"
#include "abset/thin_orbit.hpp"

#include "gen.hpp"

#include <doctest.h>

using namespace abset;
using namespace abset::thin;

namespace {

const ThinRun& desk() {
  static const ThinRun run = [] {
    ThinConfig cfg;
    return build(cfg);
  }();
  return run;
}

ThinConfig tiny_config() {
  ThinConfig cfg;
  cfg.m = 3;
  cfg.eps1 = Rational(BigInt(1), pow2(12));
  cfg.decay = 2;
  cfg.stages = 2;
  return cfg;
}

const Check* find(const CheckList& c, const std::string& name) {
  for (const auto& x : c) {
    if (x.name == name) return &x;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("init repairs the base case") {
  ThinConfig cfg;
  TStage s = init(cfg);
  CHECK(s.alpha == Q(1, 2) + cfg.eps1 / 10);
  CHECK(s.beta == Q(1, 2));
  CHECK(words::evaluate_end(s.W, s.alpha, s.beta) == cfg.eps1);
  CHECK(s.k == 10);
  CHECK(s.l == 10);
  CHECK(s.N_len == 20);
}

TEST_CASE("choose_L") {
  // (16 + 3*4) * 20 = 560
  CHECK(choose_L(20, 560, 3) == 16);
  CHECK(choose_L(20, 559, 3) == 15);
  CHECK_THROWS_AS(choose_L(20, 100, 3), DomainError);
  BigInt prev = 0;
  for (unsigned long t = 400; t < 5000; t += 37) {
    BigInt L = choose_L(20, t, 3);
    CHECK(L >= prev);
    CHECK((L + 3 * isqrt_ceil(L)) * 20 <= t);
    BigInt L1 = L + 1;
    CHECK((L1 + 3 * isqrt_ceil(L1)) * 20 > t);
    prev = L;
  }
  BigInt big = choose_L(20, pow2(40), 3);
  CHECK(big <= pow2(40) / 20);
  CHECK(pow2(40) / 20 - big < 4 * isqrt_ceil(big));
}

TEST_CASE("build_V counts") {
  TStage st;
  st.k = 10;
  st.l = 10;
  WordExpr V = build_V(st, 16);
  CHECK(V.counts() == words::CountVector{40, 120});
  words::CountVector perp = V.counts() - BigInt(2 * 4) * words::CountVector{st.k, st.l};
  CHECK(perp.x * st.k + perp.y * st.l == 0);
  st.k = 10;
  st.l = 25;
  CHECK_THROWS_AS(build_V(st, 16), DomainError);
}

TEST_CASE("one advance from the desk start") {
  ThinConfig cfg;
  cfg.stages = 2;
  ThinRun run = build(cfg);
  REQUIRE(run.stages.size() == 2);
  const auto& s1 = run.stages[0];
  const auto& s2 = run.stages[1];
  CHECK(words::evaluate_end(s1.W, s2.alpha, s2.beta) == cfg.eps1);
  CHECK(s2.eps == Rational(BigInt(1), pow2(160)));
  CHECK(words::evaluate_end(s2.W, s2.alpha, s2.beta) == s2.eps);
  Rational ratio(s2.k, s2.l);
  CHECK(Q(3, 5) < ratio);
  CHECK(ratio < Q(5, 3));
  CHECK(s2.d_alpha * Rational(s1.k) + s2.d_beta * Rational(s1.l) == 0);
}

TEST_CASE("desk run frozen lengths") {
  const auto& S = desk().stages;
  REQUIRE(S.size() == 3);
  CHECK(desk().truncated.empty());
  CHECK(*S[0].L == BigInt("54974877984"));
  CHECK(S[0].sqrtL == 234468);
  CHECK(S[0].V.length() == 9378720);
  CHECK(S[1].N_len == BigInt("1099506938400"));
  CHECK(*S[1].L == BigInt("1099513171441"));
  CHECK(S[1].sqrtL == 1048577);
  CHECK(S[1].V.length() == BigInt("2305830456738272880"));
  CHECK(S[2].N_len == BigInt("1208924666692024964507280"));
  CHECK(mpz_sizeinbase(S[2].alpha.get_den_mpz_t(), 2) == 721);
  for (std::size_t i = 0; i < S.size(); ++i) {
    CHECK(words::evaluate_end(S[i].W, S[i].alpha, S[i].beta) == S[i].eps);
    if (i + 1 < S.size()) CHECK(words::evaluate_end(S[i].W, S[i + 1].alpha, S[i + 1].beta) == S[i].eps);
  }
}

TEST_CASE("desk run invariants pass except the flagged perturbation bound") {
  const auto& run = desk();
  const auto& S = run.stages;
  for (std::size_t i = 0; i < S.size(); ++i) {
    auto checks = verify_stage(S[i], i ? &S[i - 1] : nullptr, i + 1 < S.size() ? &S[i + 1] : nullptr);
    for (const auto& c : checks) {
      if (c.severity == Severity::Asserted) CHECK_MESSAGE(c.passed, c.name);
    }
  }
  auto last = verify_stage(S[2], &S[1], nullptr);
  const Check* pert = find(last, "stage3.perturbation_below_sqrt_eps");
  REQUIRE(pert != nullptr);
  CHECK(pert->severity == Severity::Reported);
  CHECK_FALSE(pert->passed);
  CHECK(all_asserted_pass(verify_drift(run)));
}

TEST_CASE("desk densities") {
  std::vector<Rational> d;
  auto checks = verify_densities(desk(), &d);
  CHECK(all_asserted_pass(checks));
  REQUIRE(d.size() == 3);
  BigInt den("43052872745442484491");
  CHECK(d[0] == Rational(BigInt("449353868518355"), den));
  CHECK(d[1] == Rational(BigInt("82116469257061"), den));
  CHECK(d[2] == 0);
  const auto& S = desk().stages;
  auto ds = deleted_sets(desk(), 0);
  CHECK(ds.J_above.contains(S[1].N_len));
  CHECK_FALSE(ds.J_above.contains(S[1].N_len - S[0].V.length()));
  CHECK(ds.J_above.contains(S[1].N_len - S[0].V.length() + 1));
  CHECK(ds.J_above.contains(S[2].N_len));
  CHECK_FALSE(ds.J_above.contains(1));
  auto d1 = deleted_sets(desk(), 1);
  CHECK(d1.J_n.count_upto(S[1].N_len) == S[0].V.length());
  CHECK_FALSE(d1.J_above.contains(S[1].N_len));
}

TEST_CASE("tiny run against the materialized word") {
  ThinConfig cfg = tiny_config();
  ThinRun run = build(cfg);
  REQUIRE(run.stages.size() == 2);
  const auto& s1 = run.stages[0];
  const auto& s2 = run.stages[1];
  std::string flat = words::flatten(s2.W);
  REQUIRE(flat.size() == s2.N_len.get_ui());
  std::string w1 = words::flatten(s1.W);
  std::string v1 = words::flatten(s1.V);
  CHECK(w1 == "xxxyyy");
  unsigned long L = s1.L->get_ui();
  CHECK(flat.size() == L * 6 + v1.size());
  for (unsigned long r = 0; r < L; ++r) CHECK(flat.compare(r * 6, 6, w1) == 0);
  CHECK(flat.substr(L * 6) == v1);

  auto orbit = words::orbit_all(s2.W, s2.alpha, s2.beta, 100000);
  IndexSet J1 = J_set(run, 1);
  Rational sum = 0;
  BigInt kx = 0;
  for (std::size_t j = 1; j <= flat.size(); ++j) {
    if (flat[j - 1] == 'x') {
      sum += s2.alpha;
      ++kx;
    } else {
      sum += s2.beta;
    }
    CHECK(orbit.entries[j].point == frac(sum));
    CHECK(words::prefix_counts(s2.W, BigInt(static_cast<unsigned long>(j))).x == kx);
    CHECK(J1.contains(BigInt(static_cast<unsigned long>(j))) == (j > L * 6));
  }
  CHECK(frac(sum) == s2.eps);
  CHECK(s2.k == kx);

  auto rep = restricted_covering(run, 1, 500, 9, Severity::Reported);
  CHECK(rep.consistency_failures == 0);
  CHECK(rep.membership_failures == 0);
  CHECK(rep.bound == 6);
  // Brute-force covering count over every admissible index.
  std::vector<Rational> pts;
  for (std::size_t j = 1; j <= L * 6; ++j) pts.push_back(orbit.entries[j].point);
  CHECK(rep.covering_count <= dim::grid_covering(pts, rep.scale));
}

TEST_CASE("covering at n0 = 2 holds on the desk run") {
  auto rep = restricted_covering(desk(), 2, 2000, 1);
  CHECK(rep.covering_count <= rep.bound);
  CHECK(rep.drift_violations == 0);
  CHECK(rep.distance_violations == 0);
  CHECK(rep.corner_max_drift < rep.sqrt_eps);
  CHECK(all_asserted_pass(rep.checks));
}

TEST_CASE("covering at n0 = 1 is refuted by the boundary drift") {
  auto rep = restricted_covering(desk(), 1, 2000, 1, Severity::Reported);
  CHECK(rep.corner_max_drift > rep.sqrt_eps);
  CHECK(rep.covering_count > rep.bound);
  CHECK(rep.consistency_failures == 0);
}

TEST_CASE("sampling is reproducible") {
  auto a = restricted_covering(desk(), 2, 300, 42);
  auto b = restricted_covering(desk(), 2, 300, 42);
  CHECK(a.covering_count == b.covering_count);
  CHECK(a.max_drift == b.max_drift);
  UniformBig u(3), v(3);
  for (int i = 0; i < 50; ++i) {
    BigInt x = u(1, BigInt("1000000000000000000000000"));
    CHECK(x == v(1, BigInt("1000000000000000000000000")));
    CHECK(x >= 1);
  }
}

TEST_CASE("config validation") {
  ThinConfig cfg;
  cfg.eps1 = Q(1, 100);
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = ThinConfig{};
  cfg.decay = 1;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = tiny_config();
  cfg.stages = 3;
  CHECK_THROWS_AS(build(cfg), DomainError);
}

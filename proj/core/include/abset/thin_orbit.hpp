#pragma once

// An alpha-beta orbit W[alpha,beta] whose restriction to the complement of the
// thin index sets J_{>n} has vanishing box dimension. Built stage by stage with
// exact rationals; W_{n+1} = W_n^{L_n} V_n.

#include "abset/index_set.hpp"
#include "abset/numeric.hpp"
#include "abset/report.hpp"
#include "abset/word.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace abset::thin {

using words::WordExpr;

struct ThinConfig {
  BigInt m = 10;                   // W_1 = x^m y^m
  Rational eps1 = Rational(1, 1) / Rational(pow2(40));
  unsigned long decay = 4;         // rho(n) = decay, unless paper_decay
  bool paper_decay = false;        // rho(n) = 1000 n^3
  unsigned stages = 3;
  unsigned long sqrt_buffer = 3;   // the 3 in (L + 3 sqrt L) N_n
  unsigned long bit_budget = 1UL << 22;  // refuse stages whose eps needs more bits

  unsigned long rho(unsigned n) const;
  void validate() const;
};

struct TStage {
  unsigned n = 0;
  Rational alpha, beta, eps;
  WordExpr W;
  BigInt k = 0, l = 0, N_len = 0;
  // Filled in when the next stage is built.
  std::optional<BigInt> L;
  BigInt sqrtL = 0;
  WordExpr V;
  // Parameter move that produced this stage from the previous one:
  // (alpha, beta) = (alpha_prev + t l_prev, beta_prev - t k_prev).
  Rational t = 0;
  Rational d_alpha = 0, d_beta = 0;
};

TStage init(const ThinConfig& cfg);

// Largest L with (L + b ceil(sqrt L)) N_n <= ceil(eps_n^{-1/n}). Throws when L < 4.
BigInt choose_L(const TStage& stage, const ThinConfig& cfg);
BigInt choose_L(const BigInt& N_len, const BigInt& target, unsigned long buffer);

// (x^{2k-l} y^{2l+k})^{ceil(sqrt L)}.
WordExpr build_V(const TStage& stage, const BigInt& L);

// Builds stage n+1; records L_n and V_n on `stage`.
TStage advance(TStage& stage, const ThinConfig& cfg);

struct ThinRun {
  ThinConfig cfg;
  std::vector<TStage> stages;
  std::string truncated;  // non-empty if the bit budget stopped the build
};

ThinRun build(const ThinConfig& cfg);

// Invariants of one stage (and of the step from prev when given).
CheckList verify_stage(const TStage& st, const TStage* prev, const TStage* next, unsigned long buffer = 3);

// |W_n(alpha_m, beta_m) - eps_n| against the sum of N_n ||Delta_j|| over steps.
CheckList verify_drift(const ThinRun& run);

struct DeletedSets {
  IndexSet J_n;       // copies of V_n inside the final word
  IndexSet J_above;   // J_{>n}
  Rational density_J_n, upper_density_J_n;
  Rational density_above, upper_density_above;
  BigInt horizon;
};

IndexSet J_set(const ThinRun& run, unsigned i);
// Union of J_i for lo <= i <= last built V.
IndexSet J_union_from(const ThinRun& run, unsigned lo);
DeletedSets deleted_sets(const ThinRun& run, unsigned n, std::optional<BigInt> horizon = std::nullopt);

// Upper densities of J_{>n} over the final word for n = 0..stages-1 (the last
// one is empty), asserted strictly decreasing.
CheckList verify_densities(const ThinRun& run, std::vector<Rational>* densities = nullptr);

struct CoveringReport {
  unsigned n0 = 0;
  std::uint64_t seed = 0;
  Rational scale;             // 2 eps_{n0}^{1/2} (exact or dyadic lower bound)
  Rational sqrt_eps;          // eps_{n0}^{1/2} (same convention)
  std::size_t sampled = 0;    // random admissible indices
  std::size_t boundary = 0;   // block-boundary indices evaluated
  std::size_t rejected = 0;   // draws that fell in the deleted set
  Rational max_drift;         // over evaluated indices, |W'(alpha,beta)|
  Rational corner_max_drift;  // exact max over all block-boundary indices
  std::size_t distance_violations = 0;  // t_j farther than 2 eps^{1/2} from W_{n0} orbit
  std::size_t drift_violations = 0;     // |W'| >= eps^{1/2}
  std::size_t consistency_failures = 0; // split evaluation disagrees with direct prefix counts
  std::size_t membership_failures = 0;  // descent and J-set membership disagree
  BigInt covering_count = 0;
  BigInt bound = 0;           // N_{n0}
  BigInt unrestricted_count = 0;
  CheckList checks;
};

// Samples admissible indices j (outside J_{>=n0}) of the final word and checks
// the covering bound at scale 2 eps_{n0}^{1/2}.
// Checks carry severity `sev`.
CoveringReport restricted_covering(const ThinRun& run, unsigned n0, std::size_t samples, std::uint64_t seed,
                                   Severity sev = Severity::Asserted);

// Uniform BigInt in [lo, hi] from a 64-bit engine, by rejection.
class UniformBig {
public:
  explicit UniformBig(std::uint64_t seed) : eng_(seed) {}
  BigInt operator()(const BigInt& lo, const BigInt& hi);

private:
  std::mt19937_64 eng_;
};

}  // namespace abset::thin

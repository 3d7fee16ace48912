#pragma once

// Katznelson-type construction of an alpha-beta set of upper box dimension 1/2:
// nested closed orbits U_n, V_n with exactly solved rational parameters.

#include "abset/numeric.hpp"
#include "abset/report.hpp"
#include "abset/word.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace abset::katznelson {

using words::CountVector;
using words::WordExpr;

struct StructStats {
  BigInt point_count_upper = 0;  // prod (M_l + N_l + 2)
  BigInt sep_count_lower = 0;    // prod N_l
  Rational min_gap_lower = 0;
  Rational diameter_upper = 0;  // spread of the translate set {l eps_n} u {l eta_n}
  Rational allowance = 0;       // max displacement of an E_{n-1} point at this stage
  bool separation_verified = false;
};

struct KStage {
  unsigned n = 0;
  BigInt M = 0, N = 0;
  Rational alpha, beta;
  Rational eps, eta;       // lifts to [0,1)
  Rational delta_shift;    // signed change of the W_{n-1} endpoint
  Rational s, t;           // alpha_n - alpha_{n-1}, beta_n - beta_{n-1}
  Rational c, d;
  WordExpr U, V, W;
  StructStats stats;
};

class Schedule {
public:
  enum class Kind { Paper, List };

  static Schedule paper(unsigned L);
  static Schedule list(std::vector<std::pair<BigInt, BigInt>> pairs);
  // "paper:L=<k>" or "list:M1,N1;M2,N2;...". Throws DomainError naming the
  // offending token.
  static Schedule parse(const std::string& text);

  Kind kind() const { return kind_; }
  unsigned L() const { return L_; }
  // (M_n, N_n) for n >= 1.
  std::pair<BigInt, BigInt> at(unsigned n) const;
  // Number of stages available (paper schedules are unbounded).
  std::optional<unsigned> length() const;
  std::string describe() const;
  Rational gamma_budget() const { return gamma_; }

private:
  Kind kind_ = Kind::List;
  unsigned L_ = 0;
  std::vector<std::pair<BigInt, BigInt>> pairs_;
  Rational gamma_ = 0;
};

struct GrowthSums {
  Rational sum_M_over_N;       // sum M_l / N_l
  Rational sum_Nprev_over_M;   // sum N_{l-1} / M_l, N_0 = 1
};

GrowthSums growth_sums(const Schedule& s, unsigned stages);

KStage stage1(const BigInt& M1, const BigInt& N1);
KStage advance(const KStage& prev, const BigInt& Mn, const BigInt& Nn);
std::vector<KStage> build(const Schedule& s, unsigned stages);

// c_n and d_n for the closure of U_n and V_n.
Rational c_coefficient(const BigInt& M, const BigInt& N);
Rational d_coefficient(const BigInt& M, const BigInt& N);

struct FrequencyMatrix {
  Rational a[2][2];  // rows mu_bar(U_n), mu_bar(V_n)
  Rational distance; // max entry distance to the identity
};

FrequencyMatrix frequency_matrix(const KStage& stage);

struct VerifyOptions {
  Rational ratio_constant = 16;   // |ratio - 1| <= ratio_constant / M_n
  Rational constant_bound = 2;    // bound used for the measured C and C'
  bool assert_lemma_constants = false;
};

struct VerificationReport {
  Rational ratio;            // eps_n M_n N_n / eps_{n-1}
  Rational ratio_distance;   // |ratio - 1|
  Rational ratio_bound;
  Rational C;                // max(|s|,|t|) M_n |V_{n-1}| / eps_{n-1}
  Rational C_prime;          // |delta_n| M_n / eps_{n-1}
  Rational drift_U, drift_U_bound;
  Rational drift_V, drift_V_bound;
  CheckList checks;
};

// Stage-1 identities (closure, beta_1 = N_1 alpha_1).
CheckList verify_stage1(const KStage& s1);
VerificationReport verify_stage(const KStage& stage, const KStage& prev, const VerifyOptions& opt = {});

StructStats structural_stats(const KStage& stage, const KStage& prev);

// E_n: the distinct points of the U_n orbit at (alpha_n, beta_n), sorted.
std::vector<Rational> enumerate_E(const KStage& stage, const BigInt& cap);

struct Bracket {
  BigFloat lower, upper;
};

Bracket dimension_bracket(const std::vector<KStage>& stages, mpfr_prec_t prec = 128);

}  // namespace abset::katznelson

#pragma once

// Minima delta_n = min ||a alpha + b beta|| over a + b = n, the close-minima
// lemmas, the gap dichotomy for orbits and the Assouad lower-bound probe.
// Irrational inputs are MPFR enclosures; every decision is tri-state and an
// undecidable comparison raises PrecisionError.

#include "abset/index_set.hpp"
#include "abset/interval.hpp"
#include "abset/numeric.hpp"
#include "abset/report.hpp"
#include "abset/word.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace abset::dioph {

class PrecisionError : public DomainError {
public:
  explicit PrecisionError(const std::string& what) : DomainError("insufficient precision: " + what) {}
};

struct IntVec {
  BigInt a = 0, b = 0;
  friend bool operator==(const IntVec& u, const IntVec& v) { return u.a == v.a && u.b == v.b; }
};

struct MinimaRecord {
  unsigned long n = 0;
  Value delta;
  IntVec u;              // realizing vector, smallest a on ties
  bool minimal = false;  // delta_m >= delta_n for all m < n
};

MinimaRecord delta_n(const Value& alpha, const Value& beta, unsigned long n);

struct MinimaScan {
  std::vector<MinimaRecord> records;     // records[k].n == k + 1
  std::optional<unsigned long> zero_at;  // scan stopped at delta = 0

  const MinimaRecord& at(unsigned long n) const { return records.at(n - 1); }
  unsigned long size() const { return records.size(); }
  std::vector<unsigned long> minimal_indices() const;
};

MinimaScan minima_sequence(const Value& alpha, const Value& beta, unsigned long n_max);

// u, v collinear over R: returns w primitive with u = p w, v = q w.
struct CommonVector {
  IntVec w;
  BigInt p, q;
};
std::optional<CommonVector> common_integer_vector(const IntVec& u, const IntVec& v);

struct RatioHit {
  unsigned long i = 0, j = 0;
  BigInt ell = 0;
  bool divides = false;     // i | j
  bool multiple = false;    // u_j = ell u_i
  bool common_ok = false;   // gcd construction reproduces both vectors
};

struct RatioScan {
  std::vector<RatioHit> hits;
  std::vector<RatioHit> violations;
  unsigned long pairs = 0;
  std::optional<unsigned long> early_stop;
};

// Ordered pairs i != j of records with delta_j / delta_i within tol of an
// integer ell >= 1.
RatioScan integer_ratio_scan(const MinimaScan& scan, const Rational& tol);

// ||(u_a + u_b).(alpha, beta)|| <= delta_a + delta_b for a + b <= limit.
CheckList subadditivity_check(const Value& alpha, const Value& beta, const MinimaScan& scan, unsigned long limit);

struct ProbeParams {
  Rational s = Rational(49, 100);
  Rational t = 2;
  Rational r = Rational(1, 2);

  void validate() const;  // 0 < s < 1/2, t > 1 + 2s, 0 < r < 1
};

// min{s/t, r/t, r}.
Rational implied_exponent(const ProbeParams& p);
// Same with s replaced by its supremum min(1/2, (t-1)/2).
Rational implied_exponent_limit(const ProbeParams& p);

// ceil(delta^{-s}), refusing when the enclosure straddles an integer.
BigInt window_length(const Value& delta, const Rational& s);
// delta^e (exact for exact delta and integer e).
Value power(const Value& delta, const Rational& e);

struct NoCloseVerdict {
  unsigned long n = 0;
  BigInt N = 0;
  unsigned long covered_upto = 0;  // k scanned up to here
  bool partial = false;
  std::vector<unsigned long> qualifying;  // k with delta_k < delta_n^t
  unsigned long pairs_checked = 0;
  std::vector<std::pair<unsigned long, unsigned long>> failures;
  std::string verdict;  // "vacuously consistent" | "consistent" | "inconsistent" | "+ partial"
};

NoCloseVerdict no_close_minima_check(const MinimaScan& scan, const ProbeParams& params, unsigned long n,
                                     unsigned long budget = 1000000);

// Orbit points t_i = a_i alpha + b_i beta (i = 1..count), kept with their
// letter counts so pair distances are computed from count differences.
struct ValueOrbit {
  Value alpha, beta;
  std::vector<IntVec> counts;  // counts[i-1] for t_i

  std::size_t size() const { return counts.size(); }
  Value point(std::size_t i) const;
  Value distance(std::size_t i, std::size_t j) const;
};

ValueOrbit value_orbit(const words::WordExpr& w, const Value& alpha, const Value& beta, std::size_t count);

struct DistanceReport {
  unsigned long pairs = 0;
  unsigned long equalities = 0;  // count difference equals u_{|i-j|}
  std::vector<std::pair<std::size_t, std::size_t>> violations;
};

// d(t_i, t_j) >= delta_{|i-j|} over all pairs of the orbit.
DistanceReport orbit_distance_check(const ValueOrbit& orbit, const MinimaScan& scan);

struct Dichotomy {
  bool refused = false;
  std::string reason;
  unsigned long n = 0, m = 0;
  BigInt N = 0;
  unsigned long pairs = 0, separated = 0, clustered = 0;
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  std::vector<std::pair<std::size_t, std::size_t>> separation_failures;  // d < delta_m
};

Dichotomy gap_dichotomy(const ValueOrbit& orbit, const MinimaScan& scan, unsigned long n, unsigned long m,
                        const ProbeParams& params);

// All (n, m) with delta_n minimal, m in (n, N] minimal and delta_m < delta_n^t,
// restricted to indices the scan covers.
std::vector<std::pair<unsigned long, unsigned long>> qualifying_pairs(const MinimaScan& scan,
                                                                      const ProbeParams& params);

struct ProbeCase {
  unsigned long n = 0;
  std::string status;  // "case1" | "case2a" | "case2b" | "skipped: ..."
  BigInt N = 0;
  unsigned long m = 0;
  Rational rho_N = 0;
  BigInt count = 0;     // witness count for the case that fired
  Rational bound = 0;   // what the count is compared against
  Rational window_center = 0, window_radius = 0;
  Rational exponent = 0;
};

struct ProbeReport {
  ProbeParams params;
  std::vector<ProbeCase> cases;
  Rational implied_exponent = 0;
  Rational implied_exponent_limit = 0;
};

ProbeReport assouad_lower_probe(const ValueOrbit& orbit, const IndexSet& U, const MinimaScan& scan,
                                const ProbeParams& params, const std::vector<unsigned long>& n_list);

}  // namespace abset::dioph

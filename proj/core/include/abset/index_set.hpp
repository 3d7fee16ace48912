#pragma once

// Symbolic subsets of the positive integers: intervals, explicit finite sets,
// periodic repetitions of an inner pattern, and disjoint unions of these.
// Membership, counting and run navigation are exact and never enumerate.

#include "abset/numeric.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace abset {

class IndexSet {
public:
  enum class Kind { Empty, Interval, Explicit, Periodic, Union };

  IndexSet();  // empty set

  static IndexSet interval(const BigInt& lo, const BigInt& hi);
  static IndexSet explicit_set(std::vector<BigInt> members);
  // Members offset + r*period + j for j in inner and 0 <= r < reps (reps
  // absent: unbounded). inner must lie in [1, period].
  static IndexSet periodic(const BigInt& offset, const BigInt& period, std::optional<BigInt> reps,
                           const IndexSet& inner);
  static IndexSet multiples_of(const BigInt& k);
  // Union of pairwise disjoint sets. Disjointness is the caller's contract;
  // counting sums the parts.
  static IndexSet disjoint_union(const std::vector<IndexSet>& parts);

  Kind kind() const;
  bool empty() const { return kind() == Kind::Empty; }

  bool contains(const BigInt& j) const;
  // |S ∩ [1, n]|
  BigInt count_upto(const BigInt& n) const;
  // Smallest member >= j.
  std::optional<BigInt> next_member(const BigInt& j) const;
  // Smallest non-member >= j, or nothing when every integer >= j is a member.
  std::optional<BigInt> next_nonmember(const BigInt& j) const;

  // |S ∩ [1,h]| / h.
  Rational density_at(const BigInt& horizon) const;
  // max over 1 <= N <= h of |S ∩ [1,N]|/N, evaluated on the right ends of
  // member runs; periodic levels contribute their first and last repetitions.
  Rational upper_density(const BigInt& horizon) const;

  // Candidate right ends used by upper_density, all <= horizon.
  std::vector<BigInt> checkpoints(const BigInt& horizon) const;

private:
  struct Node;
  explicit IndexSet(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Run {
  BigInt start;
  BigInt length;
};

// Longest interval of {1..horizon} missing S; ties go to the smallest start.
// Walks runs one by one, so it is meant for sets with few runs below horizon.
Run longest_complement_run(const IndexSet& s, const BigInt& horizon, std::size_t run_budget = 10000000);

}  // namespace abset

#include "abset/index_set.hpp"

#include <algorithm>

namespace abset {

struct IndexSet::Node {
  Kind kind = Kind::Empty;
  BigInt lo = 0, hi = 0;                   // Interval
  std::vector<BigInt> members;             // Explicit, sorted and unique
  BigInt offset = 0, period = 0;           // Periodic
  std::optional<BigInt> reps;              // Periodic
  std::vector<IndexSet> parts;             // Periodic inner in parts[0]; Union parts
  BigInt inner_per_block = 0;              // Periodic: |inner ∩ [1, period]|
};

IndexSet::IndexSet() {
  static const auto e = std::make_shared<const Node>();
  node_ = e;
}

IndexSet IndexSet::interval(const BigInt& lo, const BigInt& hi) {
  if (lo > hi) return IndexSet();
  if (lo < 1) throw DomainError("IndexSet::interval: indices start at 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Interval;
  n->lo = lo;
  n->hi = hi;
  return IndexSet(std::shared_ptr<const Node>(n));
}

IndexSet IndexSet::explicit_set(std::vector<BigInt> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) return IndexSet();
  if (members.front() < 1) throw DomainError("IndexSet::explicit_set: indices start at 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Explicit;
  n->members = std::move(members);
  return IndexSet(std::shared_ptr<const Node>(n));
}

IndexSet IndexSet::periodic(const BigInt& offset, const BigInt& period, std::optional<BigInt> reps,
                            const IndexSet& inner) {
  if (period < 1 || offset < 0) throw DomainError("IndexSet::periodic: bad offset/period");
  if (inner.empty() || (reps && *reps <= 0)) return IndexSet();
  auto tail = inner.next_member(period + 1);
  if (tail) throw DomainError("IndexSet::periodic: inner pattern exceeds the period");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Periodic;
  n->offset = offset;
  n->period = period;
  n->reps = std::move(reps);
  n->parts = {inner};
  n->inner_per_block = inner.count_upto(period);
  return IndexSet(std::shared_ptr<const Node>(n));
}

IndexSet IndexSet::multiples_of(const BigInt& k) { return periodic(0, k, std::nullopt, interval(k, k)); }

IndexSet IndexSet::disjoint_union(const std::vector<IndexSet>& parts) {
  std::vector<IndexSet> kept;
  for (const auto& p : parts) {
    if (!p.empty()) kept.push_back(p);
  }
  if (kept.empty()) return IndexSet();
  if (kept.size() == 1) return kept.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Union;
  n->parts = std::move(kept);
  return IndexSet(std::shared_ptr<const Node>(n));
}

IndexSet::Kind IndexSet::kind() const { return node_->kind; }

namespace {

// Index r of the block holding j (j > offset), and the local position in it.
void locate(const BigInt& j, const BigInt& offset, const BigInt& period, BigInt& r, BigInt& local) {
  BigInt rel = j - offset - 1;
  mpz_fdiv_qr(r.get_mpz_t(), local.get_mpz_t(), rel.get_mpz_t(), period.get_mpz_t());
  local += 1;
}

}  // namespace

bool IndexSet::contains(const BigInt& j) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Empty: return false;
    case Kind::Interval: return n.lo <= j && j <= n.hi;
    case Kind::Explicit: return std::binary_search(n.members.begin(), n.members.end(), j);
    case Kind::Periodic: {
      if (j <= n.offset) return false;
      BigInt r, local;
      locate(j, n.offset, n.period, r, local);
      if (n.reps && r >= *n.reps) return false;
      return n.parts[0].contains(local);
    }
    case Kind::Union:
      return std::any_of(n.parts.begin(), n.parts.end(), [&](const IndexSet& p) { return p.contains(j); });
  }
  return false;
}

BigInt IndexSet::count_upto(const BigInt& upto) const {
  const Node& n = *node_;
  if (upto < 1) return 0;
  switch (n.kind) {
    case Kind::Empty: return 0;
    case Kind::Interval: {
      if (upto < n.lo) return 0;
      return std::min(upto, n.hi) - n.lo + 1;
    }
    case Kind::Explicit:
      return BigInt(static_cast<unsigned long>(std::upper_bound(n.members.begin(), n.members.end(), upto) -
                                               n.members.begin()));
    case Kind::Periodic: {
      if (upto <= n.offset) return 0;
      BigInt full, rest;
      BigInt rel = upto - n.offset;
      mpz_fdiv_qr(full.get_mpz_t(), rest.get_mpz_t(), rel.get_mpz_t(), n.period.get_mpz_t());
      if (n.reps && full >= *n.reps) return *n.reps * n.inner_per_block;
      return full * n.inner_per_block + n.parts[0].count_upto(rest);
    }
    case Kind::Union: {
      BigInt total = 0;
      for (const auto& p : n.parts) total += p.count_upto(upto);
      return total;
    }
  }
  return 0;
}

std::optional<BigInt> IndexSet::next_member(const BigInt& j0) const {
  const Node& n = *node_;
  BigInt j = j0 < 1 ? BigInt(1) : j0;
  switch (n.kind) {
    case Kind::Empty: return std::nullopt;
    case Kind::Interval:
      if (j > n.hi) return std::nullopt;
      return std::max(j, n.lo);
    case Kind::Explicit: {
      auto it = std::lower_bound(n.members.begin(), n.members.end(), j);
      if (it == n.members.end()) return std::nullopt;
      return *it;
    }
    case Kind::Periodic: {
      BigInt r = 0, local = 1;
      if (j > n.offset) locate(j, n.offset, n.period, r, local);
      for (int step = 0; step < 2; ++step) {
        if (n.reps && r >= *n.reps) return std::nullopt;
        auto m = n.parts[0].next_member(local);
        if (m && *m <= n.period) return n.offset + r * n.period + *m;
        r += 1;
        local = 1;
      }
      return std::nullopt;
    }
    case Kind::Union: {
      std::optional<BigInt> best;
      for (const auto& p : n.parts) {
        auto m = p.next_member(j);
        if (m && (!best || *m < *best)) best = m;
      }
      return best;
    }
  }
  return std::nullopt;
}

std::optional<BigInt> IndexSet::next_nonmember(const BigInt& j0) const {
  const Node& n = *node_;
  BigInt j = j0 < 1 ? BigInt(1) : j0;
  switch (n.kind) {
    case Kind::Empty: return j;
    case Kind::Interval:
      if (n.lo <= j && j <= n.hi) return BigInt(n.hi + 1);
      return j;
    case Kind::Explicit: {
      auto it = std::lower_bound(n.members.begin(), n.members.end(), j);
      while (it != n.members.end() && *it == j) {
        ++it;
        ++j;
      }
      return j;
    }
    case Kind::Periodic: {
      if (j <= n.offset) return j;
      BigInt r, local;
      locate(j, n.offset, n.period, r, local);
      if (n.reps && r >= *n.reps) return j;
      if (n.inner_per_block == n.period) {
        // Every block is full: the periodic region is one run.
        if (!n.reps) return std::nullopt;
        return BigInt(n.offset + *n.reps * n.period + 1);
      }
      auto m = n.parts[0].next_nonmember(local);
      if (m && *m <= n.period) return n.offset + r * n.period + *m;
      r += 1;
      if (n.reps && r >= *n.reps) return BigInt(n.offset + r * n.period + 1);
      m = n.parts[0].next_nonmember(1);
      return n.offset + r * n.period + *m;
    }
    case Kind::Union: {
      BigInt x = j;
      bool moved = true;
      while (moved) {
        moved = false;
        for (const auto& p : n.parts) {
          if (p.contains(x)) {
            auto nx = p.next_nonmember(x);
            if (!nx) return std::nullopt;
            x = *nx;
            moved = true;
          }
        }
      }
      return x;
    }
  }
  return std::nullopt;
}

Rational IndexSet::density_at(const BigInt& horizon) const {
  if (horizon < 1) throw DomainError("density_at: horizon must be >= 1");
  Rational d(count_upto(horizon), horizon);
  d.canonicalize();
  return d;
}

std::vector<BigInt> IndexSet::checkpoints(const BigInt& horizon) const {
  const Node& n = *node_;
  std::vector<BigInt> out;
  if (horizon < 1) return out;
  switch (n.kind) {
    case Kind::Empty: break;
    case Kind::Interval:
      if (n.lo <= horizon) out.push_back(std::min(n.hi, horizon));
      break;
    case Kind::Explicit:
      for (std::size_t i = 0; i < n.members.size() && n.members[i] <= horizon; ++i) {
        if (i + 1 == n.members.size() || n.members[i + 1] != n.members[i] + 1 || n.members[i + 1] > horizon) {
          out.push_back(n.members[i]);
        }
      }
      break;
    case Kind::Periodic: {
      if (horizon <= n.offset) break;
      BigInt r_last, local;
      locate(horizon, n.offset, n.period, r_last, local);
      if (n.reps && r_last >= *n.reps) {
        r_last = *n.reps - 1;
        local = n.period;
      }
      // Within a repetition level the ratio count/N is monotone in the block
      // index, so the first, the last full and the last partial block suffice.
      auto full = n.parts[0].checkpoints(n.period);
      auto shifted = [&](const std::vector<BigInt>& cs, const BigInt& r) {
        for (const auto& c : cs) out.push_back(n.offset + r * n.period + c);
      };
      if (r_last > 0) {
        shifted(full, BigInt(0));
        if (r_last > 1) shifted(full, r_last - 1);
      }
      shifted(n.parts[0].checkpoints(local), r_last);
      break;
    }
    case Kind::Union:
      for (const auto& p : n.parts) {
        auto cs = p.checkpoints(horizon);
        out.insert(out.end(), cs.begin(), cs.end());
      }
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational IndexSet::upper_density(const BigInt& horizon) const {
  Rational best = density_at(horizon);
  for (const auto& c : checkpoints(horizon)) {
    Rational d(count_upto(c), c);
    d.canonicalize();
    if (d > best) best = d;
  }
  return best;
}

Run longest_complement_run(const IndexSet& s, const BigInt& horizon, std::size_t run_budget) {
  if (horizon < 1) throw DomainError("longest_complement_run: horizon must be >= 1");
  Run best{1, 0};
  BigInt pos = 1;
  std::size_t runs = 0;
  while (pos <= horizon) {
    auto a = s.next_nonmember(pos);
    if (!a || *a > horizon) break;
    auto b = s.next_member(*a);
    BigInt end = (!b || *b > horizon + 1) ? BigInt(horizon + 1) : *b;
    BigInt len = end - *a;
    if (len > best.length) best = {*a, len};
    pos = end;
    if (++runs > run_budget) throw DomainError("longest_complement_run: run budget exceeded");
  }
  return best;
}

}  // namespace abset

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "quilt/collection.hpp"
#include "quilt/finite_maps.hpp"
#include "quilt/setops.hpp"

namespace quilt {

// A finite topological space over points 0..size-1.
struct FiniteTopology {
  unsigned size = 0;
  std::vector<BitSet64> opens;

  BitSet64 carrier() const {
    return {size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1};
  }
};

// True iff the empty set and the carrier are opens and the family is closed
// under pairwise union and intersection (finite closure follows).
inline bool is_topology(const FiniteTopology& t) {
  auto listed = [&](BitSet64 s) {
    return std::ranges::find(t.opens, s) != t.opens.end();
  };
  if (!listed(BitSet64{}) || !listed(t.carrier())) return false;
  for (BitSet64 a : t.opens) {
    if (!set_is_subset(a, t.carrier())) return false;
    for (BitSet64 b : t.opens)
      if (!listed(set_union(a, b)) || !listed(set_intersection(a, b)))
        return false;
  }
  return true;
}

// Continuity of a partial map: every value-space open must pull back to the
// intersection of the domain with some open. The candidate open is the union
// of all opens compatible with the preimage; being a union of opens it is
// open, and it works iff anything does.
inline bool is_continuous(const FinitePartialMap& f, const FiniteTopology& tx,
                          const FiniteTopology& ty) {
  BitSet64 dom = f.domain();
  for (BitSet64 v : ty.opens) {
    BitSet64 pre;
    for (unsigned x = 0; x < f.graph.size(); ++x)
      if (f.graph[x] >= 0 && v.contains(static_cast<unsigned>(f.graph[x])))
        pre.insert(x);
    BitSet64 best;
    for (BitSet64 o : tx.opens)
      if (set_is_subset(set_intersection(dom, o), pre))
        best = set_union(best, o);
    if (set_intersection(dom, best) != pre) return false;
  }
  return true;
}

// Maximal open separator: the union of all opens disjoint from q, if it
// covers p. Canonical, so separator tables are reproducible.
inline std::optional<BitSet64> open_separator(const FiniteTopology& tx,
                                              BitSet64 p, BitSet64 q) {
  BitSet64 u;
  for (BitSet64 o : tx.opens)
    if (set_is_empty(set_intersection(o, q))) u = set_union(u, o);
  if (set_is_subset(p, u)) return u;
  return std::nullopt;
}

inline SeparatorOracle<BitSet64, BitSet64> open_separator_oracle(
    const FiniteTopology& tx) {
  return {[&tx](const BitSet64& p, const BitSet64& q) {
            return open_separator(tx, p, q);
          },
          BitSet64{}, tx.carrier()};
}

inline ClassOracle continuity_oracle(const FiniteTopology& tx,
                                     const FiniteTopology& ty) {
  return [&tx, &ty](const FinitePartialMap& f) {
    return is_continuous(f, tx, ty);
  };
}

struct TheoremCheck {
  bool criterion = false;
  bool bruteforce = false;
  bool converse_applicable = false;
  CriterionReport<BitSet64> report;
  BruteForceResult brute;
};

// Open-set separator criterion vs exhaustive continuity verdict. The
// criterion always implies the brute-force verdict; the converse needs a
// value-space open other than the empty set and the whole carrier.
inline TheoremCheck theorem_tcont_check(
    const Collection<BitSet64>& a, const FiniteTopology& tx,
    const FiniteTopology& ty, std::uint64_t cap = kDefaultBruteForceCap) {
  TheoremCheck out;
  out.report = criterion_check(a, open_separator_oracle(tx));
  out.criterion = out.report.holds;
  out.brute =
      sjp_bruteforce(a, continuity_oracle(tx, ty), tx.size, ty.size, cap);
  out.bruteforce = out.brute.verdict;
  for (BitSet64 v : ty.opens)
    if (!set_is_empty(v) && v != ty.carrier()) out.converse_applicable = true;
  return out;
}

}  // namespace quilt

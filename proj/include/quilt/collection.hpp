#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quilt/errors.hpp"
#include "quilt/setops.hpp"

namespace quilt {

// Subcollections of an indexed collection are bitmasks over the index set.
// Working with index subsets (rather than sets of sets) keeps duplicate
// members distinct, which the criteria must tolerate.
using Mask = std::uint32_t;

inline Mask full_mask(std::size_t r) {
  return r >= 32 ? ~Mask{0} : (Mask{1} << r) - 1;
}

inline bool mask_has(Mask k, std::size_t i) { return k >> i & 1; }

template <typename S>
struct Member {
  std::string name;
  S set;
};

// An indexed list of named sets over a universe; duplicates allowed.
template <typename S>
struct Collection {
  std::vector<Member<S>> members;

  std::size_t size() const { return members.size(); }
};

template <typename S>
S union_where(const Collection<S>& a, Mask k) {
  S out{};
  for (std::size_t i = 0; i < a.size(); ++i)
    if (mask_has(k, i)) out = set_union(out, a.members[i].set);
  return out;
}

template <typename S>
S union_all(const Collection<S>& a) {
  return union_where(a, full_mask(a.size()));
}

// The two difference sets a separator for subcollection K must split:
// P = union(K) \ union(A\K) and Q = union(A\K) \ union(K).
template <typename S>
struct DiffSets {
  S p;
  S q;
};

template <typename S>
DiffSets<S> diff_sets(const Collection<S>& a, Mask k) {
  S in = union_where(a, k);
  S out = union_where(a, full_mask(a.size()) & ~k);
  return {set_difference(in, out), set_difference(out, in)};
}

// The two-valued function sending P to value1 and Q to value2. Its domain
// lies inside the collection's union and its restriction to every member is
// constant, which makes it the canonical necessity witness.
template <typename E, typename V>
struct TwoValuedWitness {
  std::map<E, V> graph;
  V value1;
  V value2;
};

template <typename S, typename V>
auto const_witness(const Collection<S>& a, Mask k, const V& c1, const V& c2) {
  if (c1 == c2)
    throw std::invalid_argument("const_witness: values must differ");
  auto [p, q] = diff_sets(a, k);
  using E = typename decltype(set_elements(p))::value_type;
  TwoValuedWitness<E, V> w{{}, c1, c2};
  for (const E& x : set_elements(p)) w.graph.emplace(x, c1);
  for (const E& x : set_elements(q)) w.graph.emplace(x, c2);
  return w;
}

enum class TrivialMasks { kSkip, kInclude };

// A model-specific separator search. find returns at most one (canonical)
// separator for the given difference sets. The two fixed separators are
// used for the trivial subcollections, which always admit them: the empty
// set for K = empty and the whole ground set for K = full.
template <typename S, typename Sep>
struct SeparatorOracle {
  std::function<std::optional<Sep>(const S& p, const S& q)> find;
  Sep empty_separator{};
  Sep ground_separator{};
};

template <typename Sep>
struct CriterionReport {
  bool holds = true;
  std::map<Mask, Sep> separators;
  std::vector<Mask> failures;
};

// The separator criterion shared by all three hosting models: for every
// subcollection K, ask the oracle for a separator of diff_sets(A, K).
// Trivial masks (empty and full) are skipped by default; when included,
// their canonical separators are supplied without consulting the oracle.
template <typename S, typename Sep>
CriterionReport<Sep> criterion_check(const Collection<S>& a,
                                     const SeparatorOracle<S, Sep>& oracle,
                                     TrivialMasks policy = TrivialMasks::kSkip) {
  if (a.size() > 20)
    throw InstanceTooLarge("criterion_check: more than 20 members");
  Mask full = full_mask(a.size());
  CriterionReport<Sep> report;
  for (Mask k = 0; k <= full; ++k) {
    if (k == 0 || k == full) {
      if (policy == TrivialMasks::kInclude)
        report.separators.emplace(
            k, k == 0 ? oracle.empty_separator : oracle.ground_separator);
      continue;
    }
    auto [p, q] = diff_sets(a, k);
    if (auto sep = oracle.find(p, q)) {
      report.separators.emplace(k, std::move(*sep));
    } else {
      report.holds = false;
      report.failures.push_back(k);
    }
  }
  if (!report.holds) report.separators.clear();
  return report;
}

// Replaces each member by its intersection with the points lying in the
// domain of some class member; criteria verdicts are invariant under this.
template <typename S, typename Pred>
Collection<S> relevant_core(const Collection<S>& a, Pred in_some_domain) {
  Collection<S> out;
  for (const auto& m : a.members) {
    S filtered{};
    for (const auto& x : set_elements(m.set))
      if (in_some_domain(x)) filtered.insert(x);
    out.members.push_back({m.name, std::move(filtered)});
  }
  return out;
}

}  // namespace quilt

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "quilt/codes.hpp"
#include "quilt/collection.hpp"
#include "quilt/enumeration.hpp"
#include "quilt/finite_maps.hpp"
#include "quilt/setops.hpp"

namespace quilt {

// A finite indexed family of sets over points 0..point_count-1: the desk
// model of a sequence of sets, small enough that every limit below is
// computable exactly.
struct DeskFamily {
  unsigned point_count = 0;
  std::vector<BitSet64> members;

  unsigned size() const { return static_cast<unsigned>(members.size()); }

  BitSet64 ground() const {
    BitSet64 g;
    for (BitSet64 m : members) g = set_union(g, m);
    return g;
  }
};

// Desk computations range codes over [0, 2^K); keep K small enough for that
// to be exhaustible.
inline std::uint64_t desk_code_bound(unsigned member_count) {
  if (member_count > 16)
    throw InstanceTooLarge("desk model limited to 16 family members");
  return std::uint64_t{1} << member_count;
}

// The index set of x, as a finite-set code: bit k is set iff x lies in
// member k.
inline std::uint64_t index_set_code(const DeskFamily& u, unsigned x) {
  std::uint64_t m = 0;
  for (unsigned k = 0; k < u.size(); ++k)
    if (u.members[k].contains(x)) m |= std::uint64_t{1} << k;
  return m;
}

// A name of x: a fair enumeration of all member indices containing x, in
// ascending order.
inline Enumeration<std::uint64_t> name_of(unsigned x, const DeskFamily& u) {
  if (!u.ground().contains(x))
    throw std::invalid_argument("name_of: point outside the family's union");
  std::vector<std::uint64_t> ks;
  for (unsigned k = 0; k < u.size(); ++k)
    if (u.members[k].contains(x)) ks.push_back(k);
  return Enumeration<std::uint64_t>::from_items(std::move(ks));
}

// The basic observable sets: intersections of the members selected by a
// finite-set code, with code 0 denoting the whole ground set.
inline BitSet64 u_hat(const DeskFamily& u, std::uint64_t m) {
  BitSet64 out = u.ground();
  for (unsigned k : finset_decode(m)) {
    if (k >= u.size())
      throw std::out_of_range("u_hat: code references a missing member");
    out = set_intersection(out, u.members[k]);
  }
  return out;
}

// An enumerable set of (code, value-index) pairs, pair-coded; the
// certificate format for computability of a function.
struct ApproxSystem {
  Enumeration<std::uint64_t> stream;  // items are pair_code(m, l)
};

// An effective union: an enumerable set S of codes m denoting the union of
// the basic sets they select.
struct EffUnion {
  Enumeration<std::uint64_t> codes;
};

using PairSet = std::set<std::pair<std::uint64_t, std::uint64_t>>;

inline ApproxSystem wrap_desk_approx(const PairSet& w) {
  std::vector<std::uint64_t> items;
  for (auto [m, l] : w) items.push_back(pair_code(m, l));
  return {Enumeration<std::uint64_t>::from_items(std::move(items))};
}

inline EffUnion wrap_desk_codes(const std::set<std::uint64_t>& s) {
  return {Enumeration<std::uint64_t>::from_items({s.begin(), s.end()})};
}

inline PairSet exhaust_pairs(const ApproxSystem& w, std::uint64_t budget) {
  PairSet out;
  for (std::uint64_t c : prefix_items(w.stream, budget))
    out.insert(unpair_code(c));
  return out;
}

// Runs the certificate against a name: a value index l is observed once some
// (m, l) has appeared in the certificate within the budget with D_m inside
// the name prefix seen so far. Monotone in the budget; in the limit it
// yields exactly the certified index set.
inline std::set<std::uint64_t> apply_approx(const ApproxSystem& w,
                                            const Enumeration<std::uint64_t>& name,
                                            std::uint64_t budget) {
  std::uint64_t seen = 0;  // finite-set code of the observed name prefix
  for (std::uint64_t k : prefix_items(name, budget))
    if (k < 64) seen |= std::uint64_t{1} << k;
  std::set<std::uint64_t> out;
  for (auto [m, l] : exhaust_pairs(w, budget))
    if (finset_subset(m, seen)) out.insert(l);
  return out;
}

// Exact check that a certificate certifies f: for every x in dom(f) and
// every value index l, f(x) lies in V_l iff some (m, l) in W has x in the
// basic set of m.
inline bool check_approx(const PairSet& w, const FinitePartialMap& f,
                         const DeskFamily& u, const DeskFamily& v) {
  for (unsigned x = 0; x < f.graph.size(); ++x) {
    if (f.graph[x] < 0) continue;
    if (!u.ground().contains(x)) return false;
    std::uint64_t xinv = index_set_code(u, x);
    unsigned fx = static_cast<unsigned>(f.graph[x]);
    for (unsigned l = 0; l < v.size(); ++l) {
      bool lhs = v.members[l].contains(fx);
      bool rhs = false;
      for (auto [m, wl] : w)
        if (wl == l && finset_subset(m, xinv)) {
          rhs = true;
          break;
        }
      if (lhs != rhs) return false;
    }
  }
  return true;
}

// The certificate of a constant function: all (m, l) with l an index of a
// member containing the constant.
inline PairSet const_approx(unsigned c, const DeskFamily& u,
                            const DeskFamily& v) {
  if (!v.ground().contains(c))
    throw std::invalid_argument("const_approx: value outside the family");
  PairSet w;
  for (std::uint64_t m = 0; m < desk_code_bound(u.size()); ++m)
    for (unsigned l = 0; l < v.size(); ++l)
      if (v.members[l].contains(c)) w.insert({m, l});
  return w;
}

// The effective union witnessing that the preimage of V_l is the domain
// intersected with an enumerable union of basic sets.
inline EffUnion preimage_union(const ApproxSystem& w, std::uint64_t l) {
  return {Enumeration<std::uint64_t>(
      [stream = w.stream, l](std::uint64_t i) -> std::optional<std::uint64_t> {
        auto c = stream.step(i);
        if (!c) return std::nullopt;
        auto [m, wl] = unpair_code(*c);
        if (wl == l) return m;
        return std::nullopt;
      })};
}

inline EffUnion eff_union_union(const EffUnion& a, const EffUnion& b) {
  return {interleave(a.codes, b.codes)};
}

// Intersection stays an effective union because intersecting two basic sets
// is taking the basic set of the merged code.
inline EffUnion eff_union_intersect(const EffUnion& a, const EffUnion& b) {
  return {Enumeration<std::uint64_t>(
      [ca = a.codes, cb = b.codes](std::uint64_t i)
          -> std::optional<std::uint64_t> {
        auto [i1, i2] = unpair_code(i);
        auto m1 = ca.step(i1);
        auto m2 = cb.step(i2);
        if (m1 && m2) return finset_union(*m1, *m2);
        return std::nullopt;
      })};
}

// Desk evaluation of the denoted set, scanning the code stream to the given
// budget (enough to exhaust any explicit desk stream).
inline BitSet64 denoted_set(const EffUnion& e, const DeskFamily& u,
                            std::uint64_t budget) {
  BitSet64 out;
  for (std::uint64_t m : prefix_set(e.codes, budget)) out = set_union(out, u_hat(u, m));
  return out;
}

using UvSeparators = std::map<Mask, EffUnion>;

// Separators for a collection whose members are themselves effective
// unions: the separator for K is the union of the selected members.
inline UvSeparators separators_from_eff_unions(
    const std::vector<EffUnion>& members) {
  UvSeparators table;
  Mask full = full_mask(members.size());
  for (Mask k = 0; k <= full; ++k) {
    std::vector<Enumeration<std::uint64_t>> selected;
    for (std::size_t i = 0; i < members.size(); ++i)
      if (mask_has(k, i)) selected.push_back(members[i].codes);
    table.emplace(k, EffUnion{interleave(std::move(selected))});
  }
  return table;
}

// Separators for a collection of complements of effective unions: the
// separator for K intersects the unions whose complements lie outside K;
// for K = full the whole ground set (code 0) serves.
inline UvSeparators complement_separators_uv(
    const std::vector<EffUnion>& complemented) {
  UvSeparators table;
  Mask full = full_mask(complemented.size());
  for (Mask k = 0; k <= full; ++k) {
    if (k == full) {
      table.emplace(k, wrap_desk_codes({0}));
      continue;
    }
    std::optional<EffUnion> acc;
    for (std::size_t i = 0; i < complemented.size(); ++i) {
      if (mask_has(k, i)) continue;
      acc = acc ? eff_union_intersect(*acc, complemented[i])
                : complemented[i];
    }
    table.emplace(k, *acc);
  }
  return table;
}

namespace detail {

struct CombineState {
  std::vector<ApproxSystem> pieces;
  std::vector<std::pair<Mask, EffUnion>> table;

  // Whether (mt, l) is witnessed within prefix budget b: some subcollection
  // whose separator has emitted a code below mt, all of whose pieces have
  // emitted an (m, l) with m below mt.
  bool witnessed(std::uint64_t mt, std::uint64_t l, std::uint64_t b) const {
    for (const auto& [k, sep] : table) {
      bool gate = false;
      for (std::uint64_t m : prefix_items(sep.codes, b))
        if (finset_subset(m, mt)) {
          gate = true;
          break;
        }
      if (!gate) continue;
      bool all = true;
      for (std::size_t i = 0; i < pieces.size() && all; ++i) {
        if (!mask_has(k, i)) continue;
        bool found = false;
        for (std::uint64_t c : prefix_items(pieces[i].stream, b)) {
          auto [m, wl] = unpair_code(c);
          if (wl == l && finset_subset(m, mt)) {
            found = true;
            break;
          }
        }
        all = found;
      }
      if (all) return true;
    }
    return false;
  }
};

inline ApproxSystem combine_stream(std::shared_ptr<const CombineState> st) {
  // Step pair(pair(mt, l), b) emits (mt, l) exactly when budget b+1 is the
  // least witnessing budget, so each pair appears exactly once.
  return {Enumeration<std::uint64_t>(
      [st](std::uint64_t i) -> std::optional<std::uint64_t> {
        auto [t, b0] = unpair_code(i);
        auto [mt, l] = unpair_code(t);
        std::uint64_t b = b0 + 1;
        if (st->witnessed(mt, l, b) && !st->witnessed(mt, l, b - 1))
          return pair_code(mt, l);
        return std::nullopt;
      })};
}

}  // namespace detail

// The combined certificate: given one certificate per member and a
// separator table of effective unions, enumerates all (mt, l) such that some
// subcollection K has a separator code below mt and every piece of K
// certifies l with a code below mt. If each piece certifies the function's
// restriction to its member and the separators are valid, the result
// certifies the whole function. The empty mask contributes nothing and the
// full mask defaults to the whole ground set when absent.
inline ApproxSystem combine_w(std::vector<ApproxSystem> w_list,
                              const UvSeparators& s_table) {
  auto st = std::make_shared<detail::CombineState>();
  Mask full = full_mask(w_list.size());
  for (Mask k = 1; k <= full; ++k) {
    auto it = s_table.find(k);
    if (it != s_table.end())
      st->table.emplace_back(k, it->second);
    else if (k == full)
      st->table.emplace_back(k, wrap_desk_codes({0}));
    else
      throw std::invalid_argument("combine_w: separator table misses a mask");
  }
  st->pieces = std::move(w_list);
  return detail::combine_stream(std::move(st));
}

// The simpler combination available when the members are themselves
// effective unions: (mt, l) is emitted once a single piece both contains the
// point (a member code below mt) and certifies l (a certificate code below
// mt).
inline ApproxSystem combine_w_simple(
    std::vector<std::pair<EffUnion, ApproxSystem>> pieces) {
  auto st = std::make_shared<detail::CombineState>();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    st->table.emplace_back(Mask{1} << i, pieces[i].first);
    st->pieces.push_back(std::move(pieces[i].second));
  }
  return detail::combine_stream(std::move(st));
}

// Exact desk evaluation of the combined certificate over bounded codes.
inline PairSet desk_combine_w(const std::vector<PairSet>& w_sets,
                              const std::map<Mask, std::set<std::uint64_t>>& s_sets,
                              unsigned member_count, unsigned value_count) {
  PairSet out;
  Mask full = full_mask(w_sets.size());
  for (std::uint64_t mt = 0; mt < desk_code_bound(member_count); ++mt) {
    for (std::uint64_t l = 0; l < value_count; ++l) {
      bool found = false;
      for (Mask k = 1; k <= full && !found; ++k) {
        std::set<std::uint64_t> sk =
            s_sets.contains(k) ? s_sets.at(k)
                               : (k == full ? std::set<std::uint64_t>{0}
                                            : std::set<std::uint64_t>{});
        bool gate = false;
        for (std::uint64_t m : sk)
          if (finset_subset(m, mt)) gate = true;
        if (!gate) continue;
        bool all = true;
        for (std::size_t i = 0; i < w_sets.size() && all; ++i) {
          if (!mask_has(k, i)) continue;
          bool piece = false;
          for (auto [m, wl] : w_sets[i])
            if (wl == l && finset_subset(m, mt)) piece = true;
          all = piece;
        }
        found = all;
      }
      if (found) out.insert({mt, l});
    }
  }
  return out;
}

// The maximal certificate of a finite partial map: all (m, l) whose basic
// set meets the domain only inside the preimage of V_l. Certifies f exactly
// when f is computable in the desk model.
inline PairSet desk_certificate(const FinitePartialMap& f, const DeskFamily& u,
                                const DeskFamily& v) {
  PairSet w;
  BitSet64 dom = f.domain();
  for (unsigned l = 0; l < v.size(); ++l) {
    BitSet64 pre;
    for (unsigned x = 0; x < f.graph.size(); ++x)
      if (f.graph[x] >= 0 && v.members[l].contains(static_cast<unsigned>(f.graph[x])))
        pre.insert(x);
    for (std::uint64_t m = 0; m < desk_code_bound(u.size()); ++m)
      if (set_is_subset(set_intersection(dom, u_hat(u, m)), pre))
        w.insert({m, l});
  }
  return w;
}

// Exact computability verdict: f is computable iff for every value index l
// the preimage of V_l is the domain intersected with the (maximal) union of
// compatible basic sets.
inline bool uv_computable_bruteforce(const FinitePartialMap& f,
                                     const DeskFamily& u,
                                     const DeskFamily& v) {
  BitSet64 dom = f.domain();
  if (!set_is_subset(dom, u.ground())) return false;
  for (unsigned x = 0; x < f.graph.size(); ++x)
    if (f.graph[x] >= 0 &&
        !v.ground().contains(static_cast<unsigned>(f.graph[x])))
      return false;
  for (unsigned l = 0; l < v.size(); ++l) {
    BitSet64 pre;
    for (unsigned x = 0; x < f.graph.size(); ++x)
      if (f.graph[x] >= 0 && v.members[l].contains(static_cast<unsigned>(f.graph[x])))
        pre.insert(x);
    BitSet64 best;
    for (std::uint64_t m = 0; m < desk_code_bound(u.size()); ++m) {
      BitSet64 hm = u_hat(u, m);
      if (set_is_subset(set_intersection(dom, hm), pre))
        best = set_union(best, hm);
    }
    if (set_intersection(dom, best) != pre) return false;
  }
  return true;
}

inline ClassOracle uv_computable_oracle(const DeskFamily& u,
                                        const DeskFamily& v) {
  return [&u, &v](const FinitePartialMap& f) {
    return uv_computable_bruteforce(f, u, v);
  };
}

// A separator that is an effective union, in explicit desk form.
struct DeskEffUnion {
  std::set<std::uint64_t> codes;
  BitSet64 points;

  friend bool operator==(const DeskEffUnion&, const DeskEffUnion&) = default;
};

// Maximal effective-union separator: the union of every basic set disjoint
// from q, accepted when it covers p.
inline SeparatorOracle<BitSet64, DeskEffUnion> eff_union_separator_oracle(
    const DeskFamily& u) {
  SeparatorOracle<BitSet64, DeskEffUnion> oracle;
  oracle.find = [&u](const BitSet64& p,
                     const BitSet64& q) -> std::optional<DeskEffUnion> {
    DeskEffUnion out;
    for (std::uint64_t m = 0; m < desk_code_bound(u.size()); ++m) {
      BitSet64 hm = u_hat(u, m);
      if (set_is_empty(set_intersection(hm, q))) {
        out.codes.insert(m);
        out.points = set_union(out.points, hm);
      }
    }
    if (set_is_subset(p, out.points)) return out;
    return std::nullopt;
  };
  oracle.empty_separator = DeskEffUnion{};
  oracle.ground_separator = DeskEffUnion{{0}, u.ground()};
  return oracle;
}

struct UvTheoremCheck {
  bool criterion = false;
  bool bruteforce = false;
  bool converse_applicable = false;
  CriterionReport<DeskEffUnion> report;
  BruteForceResult brute;
};

// Effective-union separator criterion vs exhaustive computability verdict.
// Members must be subsets of the ground set of u. The criterion always
// implies the brute-force verdict; the converse needs two value members
// with V_{l1} and V_{l2} minus V_{l1} both non-empty.
inline UvTheoremCheck theorem_tcomp_check(
    const Collection<BitSet64>& a, const DeskFamily& u, const DeskFamily& v,
    std::uint64_t cap = kDefaultBruteForceCap) {
  if (!set_is_subset(union_all(a), u.ground()))
    throw std::invalid_argument(
        "theorem_tcomp_check: members must lie in the family's union");
  UvTheoremCheck out;
  out.report = criterion_check(a, eff_union_separator_oracle(u));
  out.criterion = out.report.holds;
  std::vector<std::int8_t> values;
  for (unsigned y : set_elements(v.ground()))
    values.push_back(static_cast<std::int8_t>(y));
  out.brute = detail::bruteforce_scan(a, uv_computable_oracle(u, v),
                                      u.point_count, values, false, cap);
  out.bruteforce = out.brute.verdict;
  for (unsigned l1 = 0; l1 < v.size() && !out.converse_applicable; ++l1)
    for (unsigned l2 = 0; l2 < v.size() && !out.converse_applicable; ++l2)
      if (!set_is_empty(v.members[l1]) &&
          !set_is_empty(set_difference(v.members[l2], v.members[l1])))
        out.converse_applicable = true;
  return out;
}

}  // namespace quilt

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "quilt/arctan.hpp"
#include "quilt/codes.hpp"
#include "quilt/collection.hpp"
#include "quilt/enumeration.hpp"
#include "quilt/errors.hpp"
#include "quilt/rational.hpp"
#include "quilt/realcodes.hpp"

namespace quilt {

// A name of a real number: a stream of interval codes whose set is exactly
// the set of codes of rational open intervals containing the number.
using RealName = Enumeration<Code>;

namespace detail {

// The canonical level-k interval with denominator 2^k containing x, of
// width 2^-k (or 2^(1-k) when x sits on the grid).
inline RatInterval dyadic_cover(const Rational& x, std::uint64_t k) {
  Code den = Code(1) << static_cast<unsigned long>(k);
  Code j;
  mpz_fdiv_q(j.get_mpz_t(), Code(x.get_num() * den).get_mpz_t(),
             x.get_den().get_mpz_t());
  Rational lo(j, den), hi(j + 1, den);
  lo.canonicalize();
  hi.canonicalize();
  if (lo == x) {
    Rational lower(j - 1, den);
    lower.canonicalize();
    return {lower, hi};
  }
  return {lo, hi};
}

}  // namespace detail

// The name of a rational point. Even steps sweep all interval codes in
// ascending order, pausing on the non-containing ones, which makes the
// limit set complete; odd steps emit a canonical dyadic interval of level
// i/2 around x, which makes fine enclosures appear within feasible budgets.
inline RealName rat_name(const Rational& x) {
  return RealName([x](std::uint64_t i) -> std::optional<Code> {
    if (i % 2 == 0) {
      Code c(static_cast<unsigned long>(i / 2));
      if (interval_decode(c).contains_open(x)) return c;
      return std::nullopt;
    }
    return interval_encode(detail::dyadic_cover(x, i / 2));
  });
}

namespace detail {

// Shared evaluation state for the glued arctangent operator: caches the
// piece enclosure computed from input item j, at a tolerance shrinking with
// j. Memoization only, the stream stays a pure function of its index.
struct ArctanState {
  RealName input;
  std::map<std::uint64_t, std::optional<RatInterval>> cache;
  std::mutex mu;

  explicit ArctanState(RealName in) : input(std::move(in)) {}

  static Rational tol_for(std::uint64_t j) {
    return Rational(Code(1), Code(1) << static_cast<unsigned long>(j / 2 + 1));
  }

  std::optional<RatInterval> enclosure(std::uint64_t j) {
    {
      std::lock_guard lock(mu);
      if (auto it = cache.find(j); it != cache.end()) return it->second;
    }
    std::optional<RatInterval> out;
    if (auto code = input.step(j)) {
      RatInterval iv = interval_decode(*code);
      if (classify_piece(iv) != PieceFit::kNone)
        out = arctan_piece_enclosure(iv, tol_for(j));
    }
    std::lock_guard lock(mu);
    cache.emplace(j, out);
    return out;
  }
};

}  // namespace detail

// The arctangent as a glued operator on names: whenever an input interval
// fits one of the three pieces, its enclosure is computed and every interval
// code strictly containing the enclosure belongs to the output. Odd steps
// emit a canonical slightly-widened enclosure directly; even steps dovetail
// input items against all candidate output codes for completeness in the
// limit. Sound (every emitted interval contains arctan of the named point)
// and complete (every containing interval eventually appears).
inline RealName arctan_name(RealName x) {
  auto st = std::make_shared<detail::ArctanState>(std::move(x));
  return RealName([st](std::uint64_t i) -> std::optional<Code> {
    if (i % 2 == 1) {
      std::uint64_t j = i / 2;
      auto enc = st->enclosure(j);
      if (!enc) return std::nullopt;
      Rational pad = detail::ArctanState::tol_for(j);
      return interval_encode({enc->lo - pad, enc->hi + pad});
    }
    auto [j, c] = unpair_code(i / 2);
    auto enc = st->enclosure(j);
    if (!enc) return std::nullopt;
    Code code(static_cast<unsigned long>(c));
    if (interval_decode(code).strictly_contains(*enc)) return code;
    return std::nullopt;
  });
}

namespace detail {

// Budgeted witness that the real named by `left` is below the real named by
// `right`: a pair of emitted intervals with the left one entirely at or
// below the right one. Only the extremes matter, so the scan is incremental.
struct LessGate {
  RealName left, right;
  std::uint64_t scanned = 0;
  std::optional<Rational> min_left_hi;
  std::optional<Rational> max_right_lo;
  std::mutex mu;

  LessGate(RealName l, RealName r)
      : left(std::move(l)), right(std::move(r)) {}

  bool open_at(std::uint64_t budget) {
    std::lock_guard lock(mu);
    for (; scanned < budget; ++scanned) {
      if (auto c = left.step(scanned)) {
        Rational hi = interval_decode(*c).hi;
        if (!min_left_hi || hi < *min_left_hi) min_left_hi = hi;
      }
      if (auto c = right.step(scanned)) {
        Rational lo = interval_decode(*c).lo;
        if (!max_right_lo || lo > *max_right_lo) max_right_lo = lo;
      }
    }
    return min_left_hi && max_right_lo && *min_left_hi <= *max_right_lo;
  }
};

}  // namespace detail

// The two-sided case selector on names: relays y's codes once x < t is
// semidecided, z's codes once x > t is semidecided, and, ungated, every code
// present in both y's and z's names. If x < t the limit is a name of y; if
// x > t, of z; if x = t and y = z the common codes still name the shared
// value; if x = t and y != z every emitted interval contains both values,
// so no interval narrower than their distance ever appears.
inline RealName cases_name(RealName x, RealName t, RealName y, RealName z) {
  auto lt = std::make_shared<detail::LessGate>(x, t);
  auto gt = std::make_shared<detail::LessGate>(std::move(t), std::move(x));
  return RealName([lt, gt, y = std::move(y),
                   z = std::move(z)](std::uint64_t i) -> std::optional<Code> {
    std::uint64_t r = i / 3;
    switch (i % 3) {
      case 0: {
        auto [b, u] = unpair_code(r);
        if (!lt->open_at(b)) return std::nullopt;
        return y.step(u);
      }
      case 1: {
        auto [b, u] = unpair_code(r);
        if (!gt->open_at(b)) return std::nullopt;
        return z.step(u);
      }
      default: {
        auto [u1, u2] = unpair_code(r);
        auto c1 = y.step(u1);
        auto c2 = z.step(u2);
        if (c1 && c2 && *c1 == *c2) return c1;
        return std::nullopt;
      }
    }
  });
}

struct NameRunResult {
  std::optional<RatInterval> result;     // first emission within tolerance
  std::optional<RatInterval> narrowest;  // narrowest emission seen
  std::uint64_t steps_scanned = 0;
};

constexpr std::uint64_t kDefaultNameBudget = 200000;

inline NameRunResult run_to_precision(const RealName& name,
                                      const Rational& eps,
                                      std::uint64_t budget_cap) {
  NameRunResult out;
  for (std::uint64_t i = 0; i < budget_cap; ++i) {
    auto c = name.step(i);
    if (!c) continue;
    RatInterval iv = interval_decode(*c);
    if (!out.narrowest || iv.width() < out.narrowest->width())
      out.narrowest = iv;
    if (iv.width() <= eps) {
      out.result = iv;
      out.steps_scanned = i + 1;
      return out;
    }
  }
  out.steps_scanned = budget_cap;
  return out;
}

// Runs the name until an emitted interval has width at most eps.
inline RatInterval eval_to_precision(
    const RealName& name, const Rational& eps,
    std::uint64_t budget_cap = kDefaultNameBudget) {
  if (eps <= 0)
    throw std::invalid_argument("eval_to_precision: eps must be positive");
  auto run = run_to_precision(name, eps, budget_cap);
  if (!run.result)
    throw BudgetExhausted("eval_to_precision: budget exhausted");
  return *run.result;
}

inline std::vector<RatInterval> collect_emitted(const RealName& name,
                                                std::uint64_t budget) {
  std::vector<RatInterval> out;
  for (std::uint64_t i = 0; i < budget; ++i)
    if (auto c = name.step(i)) out.push_back(interval_decode(*c));
  return out;
}

// An open subset of the line presented as a union of an enumerated stream
// of rational open intervals (the real-line form of an effective union).
struct RealOpenSet {
  Enumeration<RatInterval> pieces;
};

namespace detail {

// A finite union of disjoint open segments in ascending order; a missing
// endpoint is an infinite one. The partition separators are intersections
// of finitely many rational rays, so they stay in this class and can be
// intersected symbolically.
struct OpenSegments {
  struct Seg {
    std::optional<Rational> lo, hi;
  };
  std::vector<Seg> segs;
};

inline OpenSegments segments_intersect(const OpenSegments& a,
                                       const OpenSegments& b) {
  OpenSegments out;
  for (const auto& x : a.segs) {
    for (const auto& y : b.segs) {
      OpenSegments::Seg s;
      s.lo = !x.lo ? y.lo : (!y.lo ? x.lo : std::optional(std::max(*x.lo, *y.lo)));
      s.hi = !x.hi ? y.hi : (!y.hi ? x.hi : std::optional(std::min(*x.hi, *y.hi)));
      if (!s.lo || !s.hi || *s.lo < *s.hi) out.segs.push_back(std::move(s));
    }
  }
  return out;
}

// Enumerates the union: finite segments are emitted directly, unbounded
// ones as armlengths growing exponentially.
inline RealOpenSet segments_stream(OpenSegments segments) {
  auto segs = std::make_shared<const std::vector<OpenSegments::Seg>>(
      std::move(segments.segs));
  return {Enumeration<RatInterval>(
      [segs](std::uint64_t i) -> std::optional<RatInterval> {
        if (segs->empty()) return std::nullopt;
        const auto& seg = (*segs)[i % segs->size()];
        std::uint64_t n = i / segs->size();
        Rational arm(Code(1) << static_cast<unsigned long>(std::min<std::uint64_t>(n, 512)));
        Rational lo = seg.lo ? *seg.lo
                             : (seg.hi ? Rational(*seg.hi - arm)
                                       : Rational(-arm));
        Rational hi = seg.hi ? *seg.hi
                             : (seg.lo ? Rational(*seg.lo + arm)
                                       : arm);
        if (lo < hi) return RatInterval{lo, hi};
        return std::nullopt;
      })};
}

}  // namespace detail

// Budgeted membership semi-decision for a point of the open set.
inline bool covers_within(const RealOpenSet& s, const Rational& pt,
                          std::uint64_t budget) {
  for (std::uint64_t i = 0; i < budget; ++i)
    if (auto iv = s.pieces.step(i))
      if (iv->contains_open(pt)) return true;
  return false;
}

// Separator table for the closed-interval partition (-inf, c1], [c1, c2],
// ..., [cr, +inf): each piece is the complement of an open set enumerated
// by rational intervals, and the separator for K intersects the open sets
// complementing the pieces outside K. For K = full the whole line serves.
inline std::map<Mask, RealOpenSet> partition_separators(
    const std::vector<Rational>& cuts) {
  if (cuts.empty())
    throw std::invalid_argument("partition_separators: no cut points");
  for (std::size_t i = 1; i < cuts.size(); ++i)
    if (!(cuts[i - 1] < cuts[i]))
      throw std::invalid_argument(
          "partition_separators: cut points must be strictly ascending");
  std::size_t pieces = cuts.size() + 1;
  if (pieces > 16)
    throw InstanceTooLarge("partition_separators: too many pieces");

  std::vector<detail::OpenSegments> complemented(pieces);
  complemented[0].segs.push_back({cuts.front(), std::nullopt});
  for (std::size_t i = 1; i + 1 < pieces; ++i) {
    complemented[i].segs.push_back({std::nullopt, cuts[i - 1]});
    complemented[i].segs.push_back({cuts[i], std::nullopt});
  }
  complemented[pieces - 1].segs.push_back({std::nullopt, cuts.back()});

  std::map<Mask, RealOpenSet> table;
  Mask full = full_mask(pieces);
  for (Mask k = 0; k <= full; ++k) {
    if (k == full) {
      detail::OpenSegments line;
      line.segs.push_back({std::nullopt, std::nullopt});
      table.emplace(k, detail::segments_stream(std::move(line)));
      continue;
    }
    std::optional<detail::OpenSegments> acc;
    for (std::size_t i = 0; i < pieces; ++i) {
      if (mask_has(k, i)) continue;
      acc = acc ? detail::segments_intersect(*acc, complemented[i])
                : complemented[i];
    }
    table.emplace(k, detail::segments_stream(std::move(*acc)));
  }
  return table;
}

}  // namespace quilt

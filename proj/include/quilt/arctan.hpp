#pragma once

#include <map>
#include <mutex>
#include <stdexcept>

#include "quilt/rational.hpp"

namespace quilt {

// The three overlapping pieces covering the line: (-a, a), (b, +inf) and
// (-inf, -b), with 0 < b < a, a < 2 and a*b >= 1 so that the series applies
// throughout the middle piece and reciprocals of the outer pieces land
// inside it.
inline const Rational& piece_inner_bound() {
  static const Rational b(3, 5);
  return b;
}

inline const Rational& piece_outer_bound() {
  static const Rational a(19, 10);
  return a;
}

// Partial sum of the alternating arctangent series with the tail bounded by
// the first omitted term: stops once |x|^(2n+1)/(2n+1) <= tail_tol, so the
// result brackets arctan(x) within tail_tol on both sides. Requires |x| < 1.
inline RatInterval arctan_series_enclosure(const Rational& x,
                                           const Rational& tail_tol) {
  if (tail_tol <= 0)
    throw std::invalid_argument("arctan series: tolerance must be positive");
  Rational ax = abs(x);
  if (ax >= 1)
    throw std::invalid_argument("arctan series: |x| must be below 1");
  Rational x2 = x * x;
  Rational power = x;  // (-1)^n x^(2n+1), sign folded in
  Rational sum = 0;
  for (unsigned long n = 0;; ++n) {
    Rational denom(2 * n + 1);
    if (abs(power) / denom <= tail_tol) break;
    sum += power / denom;
    power *= -x2;
  }
  return {sum - tail_tol, sum + tail_tol};
}

// Enclosure of pi/2 via pi/4 = 4 arctan(1/5) - arctan(1/239), evaluated with
// the same series machinery; width at most tol. Memoized per tolerance.
inline RatInterval pi_half_enclosure(const Rational& tol) {
  if (tol <= 0)
    throw std::invalid_argument("pi/2 enclosure: tolerance must be positive");
  static std::map<Rational, RatInterval> cache;
  static std::mutex mu;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(tol); it != cache.end()) return it->second;
  }
  RatInterval a5 = arctan_series_enclosure(Rational(1, 5), tol / 32);
  RatInterval a239 = arctan_series_enclosure(Rational(1, 239), tol / 8);
  RatInterval out{8 * a5.lo - 2 * a239.hi, 8 * a5.hi - 2 * a239.lo};
  std::lock_guard lock(mu);
  cache.emplace(tol, out);
  return out;
}

// Enclosure of arctan over a closed rational interval inside (-a, a), via
// the argument-halving identity arctan e = arctan(e/2) + arctan(e/(2+e^2))
// applied at both endpoints. Both summands have arguments of magnitude
// below 0.95, where the series tail bound applies; the result's width is at
// most the image width plus 2*tol.
inline RatInterval arctan_enclosure(const RatInterval& iv,
                                    const Rational& tol) {
  const Rational& a = piece_outer_bound();
  if (!(-a < iv.lo && iv.lo <= iv.hi && iv.hi < a))
    throw std::invalid_argument("arctan_enclosure: interval outside (-a, a)");
  auto endpoint = [&tol](const Rational& e) {
    RatInterval s1 = arctan_series_enclosure(e / 2, tol / 4);
    RatInterval s2 = arctan_series_enclosure(e / (2 + e * e), tol / 4);
    return RatInterval{s1.lo + s2.lo, s1.hi + s2.hi};
  };
  return {endpoint(iv.lo).lo, endpoint(iv.hi).hi};
}

// Enclosure over an interval lying in (b, +inf) or (-inf, -b), reduced to
// the middle piece through arctan x = pi/2 - arctan(1/x) (and its mirror for
// negative x). Reciprocals stay inside (-a, a) because a*b >= 1.
inline RatInterval arctan_piece_large(const RatInterval& iv,
                                      const Rational& tol) {
  const Rational& b = piece_inner_bound();
  RatInterval pi2 = pi_half_enclosure(tol / 2);
  if (iv.lo > b) {
    RatInterval inner =
        arctan_enclosure({1 / iv.hi, 1 / iv.lo}, tol / 2);
    return {pi2.lo - inner.hi, pi2.hi - inner.lo};
  }
  if (iv.hi < -b) {
    RatInterval inner =
        arctan_enclosure({1 / iv.hi, 1 / iv.lo}, tol / 2);
    return {-pi2.hi - inner.hi, -pi2.lo - inner.lo};
  }
  throw std::invalid_argument("arctan_piece_large: interval outside pieces");
}

enum class PieceFit { kMiddle, kPositive, kNegative, kNone };

// Deterministic piece selection, middle piece preferred on overlaps.
inline PieceFit classify_piece(const RatInterval& iv) {
  if (-piece_outer_bound() < iv.lo && iv.hi < piece_outer_bound())
    return PieceFit::kMiddle;
  if (iv.lo > piece_inner_bound()) return PieceFit::kPositive;
  if (iv.hi < -piece_inner_bound()) return PieceFit::kNegative;
  return PieceFit::kNone;
}

inline RatInterval arctan_piece_enclosure(const RatInterval& iv,
                                          const Rational& tol) {
  switch (classify_piece(iv)) {
    case PieceFit::kMiddle:
      return arctan_enclosure(iv, tol);
    case PieceFit::kPositive:
    case PieceFit::kNegative:
      return arctan_piece_large(iv, tol);
    default:
      throw std::invalid_argument("arctan: interval fits no piece");
  }
}

}  // namespace quilt

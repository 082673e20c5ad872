#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <utility>

#include "quilt/rational.hpp"

namespace quilt {

// Codes for rationals and rational open intervals. Fine intervals get codes
// far beyond 64 bits, so codes are arbitrary-precision naturals.
using Code = mpz_class;

inline Code pair_code_mpz(const Code& a, const Code& b) {
  Code s = a + b;
  return s * (s + 1) / 2 + b;
}

inline std::pair<Code, Code> unpair_code_mpz(const Code& p) {
  // w = floor((sqrt(8p+1)-1)/2); mpz sqrt is exact integer sqrt.
  Code w = sqrt(8 * p + 1);
  w = (w - 1) / 2;
  while ((w + 1) * (w + 2) / 2 <= p) ++w;
  while (w * (w + 1) / 2 > p) --w;
  Code b = p - w * (w + 1) / 2;
  return {w - b, b};
}

inline Code zigzag_encode(const Code& z) {
  return z >= 0 ? Code(2 * z) : Code(-2 * z - 1);
}

inline Code zigzag_decode(const Code& n) {
  return n % 2 == 0 ? Code(n / 2) : Code(-(n + 1) / 2);
}

// Rational codes: code pair(zigzag(num), den-1) decodes to num/(den-1+1).
// Decoding is total (non-canonical fractions decode to the same rational);
// encoding uses the canonical form, so decode(encode(q)) == q.
inline Rational rational_decode(const Code& n) {
  auto [a, b] = unpair_code_mpz(n);
  Rational q(zigzag_decode(a), b + 1);
  q.canonicalize();
  return q;
}

inline Code rational_encode(const Rational& q) {
  return pair_code_mpz(zigzag_encode(q.get_num()), Code(q.get_den() - 1));
}

// Positive rational codes, used for interval widths.
inline Rational positive_decode(const Code& n) {
  auto [a, b] = unpair_code_mpz(n);
  Rational q(a + 1, b + 1);
  q.canonicalize();
  return q;
}

inline Code positive_encode(const Rational& d) {
  if (d <= 0) throw std::invalid_argument("positive_encode: value <= 0");
  return pair_code_mpz(Code(d.get_num() - 1), Code(d.get_den() - 1));
}

// Interval codes: pair(code of the left endpoint, code of the width).
// Total on naturals; decode(encode(interval)) == interval.
inline RatInterval interval_decode(const Code& n) {
  auto [a, b] = unpair_code_mpz(n);
  Rational lo = rational_decode(a);
  return {lo, lo + positive_decode(b)};
}

inline Code interval_encode(const RatInterval& iv) {
  if (!(iv.lo < iv.hi))
    throw std::invalid_argument("interval_encode: endpoints not increasing");
  return pair_code_mpz(rational_encode(iv.lo), positive_encode(iv.width()));
}

}  // namespace quilt

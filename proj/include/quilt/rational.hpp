#pragma once

#include <gmpxx.h>

#include <string>

#include "quilt/errors.hpp"

namespace quilt {

// Exact rational arithmetic; values are kept in canonical form.
using Rational = mpq_class;

// Parses "num/den" or a plain integer string.
inline Rational parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw SchemaError("malformed rational: " + text);
  if (q.get_den() == 0) throw SchemaError("zero denominator: " + text);
  q.canonicalize();
  return q;
}

inline std::string rational_string(const Rational& q) {
  return q.get_str();
}

// A rational interval given by its endpoints. Codes denote open intervals
// (lo, hi) with lo < hi; enclosures are read as closed intervals [lo, hi]
// and may be degenerate.
struct RatInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }

  bool contains_open(const Rational& x) const { return lo < x && x < hi; }

  // This open interval strictly contains the closed interval [j.lo, j.hi].
  bool strictly_contains(const RatInterval& j) const {
    return lo < j.lo && j.hi < hi;
  }

  friend bool operator==(const RatInterval& a, const RatInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

}  // namespace quilt

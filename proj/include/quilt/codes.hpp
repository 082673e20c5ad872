#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quilt {

// Cantor's polynomial pairing: pair_code(a, b) = (a+b)(a+b+1)/2 + b.
// Bijection between N^2 and N with a closed-form inverse.
inline std::uint64_t pair_code(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
  unsigned __int128 p = s * (s + 1) / 2 + b;
  if (p > UINT64_MAX)
    throw std::overflow_error("pair_code: components too large");
  return static_cast<std::uint64_t>(p);
}

inline std::pair<std::uint64_t, std::uint64_t> unpair_code(std::uint64_t p) {
  // w = floor((sqrt(8p+1)-1)/2), adjusted to be exact near the boundary.
  std::uint64_t w = static_cast<std::uint64_t>(
      (std::sqrt(8.0L * static_cast<long double>(p) + 1.0L) - 1.0L) / 2.0L);
  auto tri = [](unsigned __int128 n) { return n * (n + 1) / 2; };
  while (tri(w + 1) <= p) ++w;
  while (tri(w) > p) --w;
  std::uint64_t b = p - static_cast<std::uint64_t>(tri(w));
  return {w - b, b};
}

// Canonical finite-set codes: k is a member of the set coded by m iff bit k
// of m is set. Code 0 is the empty set; subset tests are bitmask tests.
inline std::vector<unsigned> finset_decode(std::uint64_t m) {
  std::vector<unsigned> out;
  for (unsigned k = 0; k < 64; ++k)
    if (m >> k & 1) out.push_back(k);
  return out;
}

inline std::uint64_t finset_encode(std::span<const unsigned> elems) {
  std::uint64_t m = 0;
  for (unsigned k : elems) {
    assert(k < 64 && "finite-set code limited to elements below 64");
    m |= std::uint64_t{1} << k;
  }
  return m;
}

inline std::uint64_t finset_encode(const std::vector<unsigned>& elems) {
  return finset_encode(std::span<const unsigned>(elems));
}

inline bool finset_contains(std::uint64_t m, unsigned k) {
  return k < 64 && (m >> k & 1);
}

// D_{m1} subset of D_{m2}.
inline bool finset_subset(std::uint64_t m1, std::uint64_t m2) {
  return (m1 & ~m2) == 0;
}

inline std::uint64_t finset_union(std::uint64_t m1, std::uint64_t m2) {
  return m1 | m2;
}

// Tuples of naturals are flattened into a single code by iterated pairing:
// code(x0) = x0, code(x0,...,xn) = pair_code(code(x0,...,x_{n-1}), xn).
// For each fixed arity this is a bijection between N^n and N.
inline std::uint64_t tuple_code(std::span<const std::uint64_t> x) {
  assert(!x.empty());
  std::uint64_t c = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) c = pair_code(c, x[i]);
  return c;
}

inline std::uint64_t tuple_code(const std::vector<std::uint64_t>& x) {
  return tuple_code(std::span<const std::uint64_t>(x));
}

inline std::vector<std::uint64_t> tuple_decode(std::uint64_t code,
                                               std::size_t arity) {
  assert(arity >= 1);
  std::vector<std::uint64_t> out(arity);
  for (std::size_t i = arity; i-- > 1;) {
    auto [rest, last] = unpair_code(code);
    out[i] = last;
    code = rest;
  }
  out[0] = code;
  return out;
}

}  // namespace quilt

#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <set>
#include <vector>

namespace quilt {

// Small set over an indexed universe of at most 64 points, used by the
// finite-model checkers where brute-force loops dominate.
struct BitSet64 {
  std::uint64_t bits = 0;

  friend auto operator<=>(const BitSet64&, const BitSet64&) = default;

  bool contains(unsigned k) const { return bits >> k & 1; }
  void insert(unsigned k) { bits |= std::uint64_t{1} << k; }
  unsigned size() const { return static_cast<unsigned>(__builtin_popcountll(bits)); }
};

inline BitSet64 set_union(BitSet64 a, BitSet64 b) { return {a.bits | b.bits}; }
inline BitSet64 set_intersection(BitSet64 a, BitSet64 b) {
  return {a.bits & b.bits};
}
inline BitSet64 set_difference(BitSet64 a, BitSet64 b) {
  return {a.bits & ~b.bits};
}
inline bool set_is_empty(BitSet64 a) { return a.bits == 0; }
inline bool set_is_subset(BitSet64 a, BitSet64 b) {
  return (a.bits & ~b.bits) == 0;
}
inline std::vector<unsigned> set_elements(BitSet64 a) {
  std::vector<unsigned> out;
  for (unsigned k = 0; k < 64; ++k)
    if (a.contains(k)) out.push_back(k);
  return out;
}

template <typename P>
std::set<P> set_union(const std::set<P>& a, const std::set<P>& b) {
  std::set<P> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

template <typename P>
std::set<P> set_intersection(const std::set<P>& a, const std::set<P>& b) {
  std::set<P> out;
  std::ranges::set_intersection(a, b, std::inserter(out, out.begin()));
  return out;
}

template <typename P>
std::set<P> set_difference(const std::set<P>& a, const std::set<P>& b) {
  std::set<P> out;
  std::ranges::set_difference(a, b, std::inserter(out, out.begin()));
  return out;
}

template <typename P>
bool set_is_empty(const std::set<P>& a) {
  return a.empty();
}

template <typename P>
bool set_is_subset(const std::set<P>& a, const std::set<P>& b) {
  return std::ranges::includes(b, a);
}

template <typename P>
std::vector<P> set_elements(const std::set<P>& a) {
  return {a.begin(), a.end()};
}

}  // namespace quilt

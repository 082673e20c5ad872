#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "quilt/collection.hpp"
#include "quilt/errors.hpp"
#include "quilt/setops.hpp"

namespace quilt {

// A partial map between finite carriers; -1 marks points outside the domain.
struct FinitePartialMap {
  std::vector<std::int8_t> graph;  // indexed by domain-space point

  BitSet64 domain() const {
    BitSet64 d;
    for (unsigned i = 0; i < graph.size(); ++i)
      if (graph[i] >= 0) d.insert(i);
    return d;
  }

  bool defined_at(unsigned x) const {
    return x < graph.size() && graph[x] >= 0;
  }

  FinitePartialMap restricted_to(BitSet64 s) const {
    FinitePartialMap out{std::vector<std::int8_t>(graph.size(), -1)};
    for (unsigned i = 0; i < graph.size(); ++i)
      if (graph[i] >= 0 && s.contains(i)) out.graph[i] = graph[i];
    return out;
  }

  friend bool operator==(const FinitePartialMap&,
                         const FinitePartialMap&) = default;
};

using ClassOracle = std::function<bool(const FinitePartialMap&)>;

// The class of partial maps whose range is a single value.
inline ClassOracle one_element_range_oracle() {
  return [](const FinitePartialMap& f) {
    std::optional<std::int8_t> seen;
    for (std::int8_t v : f.graph) {
      if (v < 0) continue;
      if (seen && *seen != v) return false;
      seen = v;
    }
    return seen.has_value();
  };
}

struct BruteForceResult {
  bool verdict = true;
  std::optional<FinitePartialMap> counterexample;
};

constexpr std::uint64_t kDefaultBruteForceCap = 200000;

namespace detail {

// Enumerates candidate functions in canonical (lexicographic, last point
// fastest) order and reports the first whose restrictions all satisfy the
// class but which itself does not.
inline BruteForceResult bruteforce_scan(const Collection<BitSet64>& a,
                                        const ClassOracle& in_class,
                                        unsigned x_size,
                                        const std::vector<std::int8_t>& values,
                                        bool totals_only, std::uint64_t cap) {
  std::vector<unsigned> pts = set_elements(union_all(a));
  std::size_t base = values.size() + (totals_only ? 0 : 1);
  long double total = 1;
  for (std::size_t i = 0; i < pts.size(); ++i) total *= base;
  if (total > static_cast<long double>(cap))
    throw InstanceTooLarge("brute force: candidate count exceeds cap");

  std::vector<std::size_t> digits(pts.size(), 0);
  while (true) {
    FinitePartialMap f{std::vector<std::int8_t>(x_size, -1)};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::size_t d = digits[i];
      if (totals_only)
        f.graph[pts[i]] = values[d];
      else if (d > 0)
        f.graph[pts[i]] = values[d - 1];
    }
    bool hypothesis = true;
    for (std::size_t i = 0; i < a.size() && hypothesis; ++i)
      hypothesis = in_class(f.restricted_to(a.members[i].set));
    if (hypothesis && !in_class(f)) return {false, std::move(f)};

    std::size_t pos = pts.size();
    while (pos > 0) {
      if (++digits[pos - 1] < base) break;
      digits[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return {true, std::nullopt};
}

inline std::vector<std::int8_t> iota_values(unsigned n) {
  std::vector<std::int8_t> v(n);
  for (unsigned i = 0; i < n; ++i) v[i] = static_cast<std::int8_t>(i);
  return v;
}

}  // namespace detail

// Exhaustive check of the strong gluing property: every partial function
// with domain inside the collection's union whose restrictions to all
// members are in the class must itself be in the class. On failure the
// first counterexample in canonical order is returned.
inline BruteForceResult sjp_bruteforce(
    const Collection<BitSet64>& a, const ClassOracle& in_class,
    unsigned x_size, unsigned y_size,
    std::uint64_t cap = kDefaultBruteForceCap) {
  return detail::bruteforce_scan(a, in_class, x_size,
                                 detail::iota_values(y_size), false, cap);
}

// Same, restricted to functions total on the collection's union.
inline BruteForceResult jp_bruteforce(
    const Collection<BitSet64>& a, const ClassOracle& in_class,
    unsigned x_size, unsigned y_size,
    std::uint64_t cap = kDefaultBruteForceCap) {
  return detail::bruteforce_scan(a, in_class, x_size,
                                 detail::iota_values(y_size), true, cap);
}

}  // namespace quilt

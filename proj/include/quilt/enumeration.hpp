#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "quilt/codes.hpp"

namespace quilt {

// A deterministic, fair stream standing for a recursively enumerable set.
// step(i) yields the item emitted at index i, or nullopt for a pause step.
// step is a pure function of i; every member of the represented set appears
// at some finite index, and membership observed within a budget stays
// observed at every larger budget. Pause steps keep dovetailed combinations
// total per step.
template <typename T>
class Enumeration {
 public:
  using StepFn = std::function<std::optional<T>(std::uint64_t)>;

  Enumeration() : fn_(std::make_shared<StepFn>([](std::uint64_t) {
                    return std::optional<T>{};
                  })) {}

  explicit Enumeration(StepFn fn)
      : fn_(std::make_shared<StepFn>(std::move(fn))) {}

  std::optional<T> step(std::uint64_t i) const { return (*fn_)(i); }

  // The stream emitting nothing (the empty set).
  static Enumeration never() { return Enumeration(); }

  // Emits the given items in order, then pauses forever.
  static Enumeration from_items(std::vector<T> items) {
    auto data = std::make_shared<const std::vector<T>>(std::move(items));
    return Enumeration([data](std::uint64_t i) -> std::optional<T> {
      if (i < data->size()) return (*data)[i];
      return std::nullopt;
    });
  }

  // Emits fn(i) at every step; fn must be total.
  static Enumeration from_index_fn(std::function<T(std::uint64_t)> fn) {
    return Enumeration(
        [fn = std::move(fn)](std::uint64_t i) -> std::optional<T> {
          return fn(i);
        });
  }

 private:
  std::shared_ptr<StepFn> fn_;
};

inline Enumeration<std::uint64_t> naturals() {
  return Enumeration<std::uint64_t>::from_index_fn(
      [](std::uint64_t i) { return i; });
}

// Budgeted semi-decision of membership: true ("yes") iff x appears among
// step(0..budget-1). false means "unknown at this budget", never "no".
template <typename T>
bool semidecide(const Enumeration<T>& e, const T& x, std::uint64_t budget) {
  for (std::uint64_t i = 0; i < budget; ++i) {
    auto v = e.step(i);
    if (v && *v == x) return true;
  }
  return false;
}

template <typename T>
std::vector<T> prefix_items(const Enumeration<T>& e, std::uint64_t budget) {
  std::vector<T> out;
  for (std::uint64_t i = 0; i < budget; ++i)
    if (auto v = e.step(i)) out.push_back(*v);
  return out;
}

template <typename T>
std::set<T> prefix_set(const Enumeration<T>& e, std::uint64_t budget) {
  std::set<T> out;
  for (std::uint64_t i = 0; i < budget; ++i)
    if (auto v = e.step(i)) out.insert(*v);
  return out;
}

template <typename T, typename F>
auto map_stream(Enumeration<T> e, F fn)
    -> Enumeration<decltype(fn(std::declval<T>()))> {
  using U = decltype(fn(std::declval<T>()));
  return Enumeration<U>(
      [e = std::move(e), fn = std::move(fn)](std::uint64_t i) {
        auto v = e.step(i);
        return v ? std::optional<U>(fn(*v)) : std::optional<U>{};
      });
}

template <typename T, typename Pred>
Enumeration<T> filter_stream(Enumeration<T> e, Pred keep) {
  return Enumeration<T>(
      [e = std::move(e), keep = std::move(keep)](std::uint64_t i) {
        auto v = e.step(i);
        if (v && keep(*v)) return v;
        return std::optional<T>{};
      });
}

// Fair union: round-robin over the factors, one step each in turn.
template <typename T>
Enumeration<T> interleave(std::vector<Enumeration<T>> factors) {
  if (factors.empty()) return Enumeration<T>::never();
  auto fs =
      std::make_shared<const std::vector<Enumeration<T>>>(std::move(factors));
  return Enumeration<T>([fs](std::uint64_t i) {
    std::uint64_t k = fs->size();
    return (*fs)[i % k].step(i / k);
  });
}

template <typename T>
Enumeration<T> interleave(Enumeration<T> a, Enumeration<T> b) {
  return interleave(std::vector<Enumeration<T>>{std::move(a), std::move(b)});
}

// Dovetailed intersection: an item is emitted once it has been seen in every
// factor. Step pair_code(b, r) emits the r-th item (ascending) that is in
// the intersection of all (b+1)-prefixes but not of all b-prefixes, so each
// member of the limit intersection appears exactly once.
template <typename T>
Enumeration<T> intersect_all(std::vector<Enumeration<T>> factors) {
  assert(!factors.empty());
  auto fs =
      std::make_shared<const std::vector<Enumeration<T>>>(std::move(factors));
  auto inter_prefix = [fs](std::uint64_t budget) {
    std::set<T> acc = prefix_set((*fs)[0], budget);
    for (std::size_t j = 1; j < fs->size() && !acc.empty(); ++j) {
      std::set<T> next;
      std::set<T> pj = prefix_set((*fs)[j], budget);
      std::ranges::set_intersection(acc, pj,
                                    std::inserter(next, next.begin()));
      acc = std::move(next);
    }
    return acc;
  };
  return Enumeration<T>([inter_prefix](std::uint64_t i) -> std::optional<T> {
    auto [b0, r] = unpair_code(i);
    std::uint64_t b = b0 + 1;
    std::set<T> now = inter_prefix(b);
    std::set<T> before = inter_prefix(b - 1);
    std::vector<T> novel;
    std::ranges::set_difference(now, before, std::back_inserter(novel));
    if (r < novel.size()) return novel[r];
    return std::nullopt;
  });
}

}  // namespace quilt

#pragma once

#include <map>
#include <random>
#include <set>
#include <vector>

#include "quilt/glue.hpp"

namespace quilt::testing {

// A randomized consistent gluing instance over a one-dimensional universe:
// random members, a partial target f on a random subset of their union, and
// total table evaluators that agree with f wherever f is defined. The
// separator table is the enumerable-members construction.
struct GlueFixture {
  GlueInstance instance;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> graph;  // f as pairs
  std::vector<std::set<std::uint64_t>> member_sets;
  std::uint64_t budget_bound = 0;  // stage at which every graph point fires
};

inline GlueFixture random_glue_fixture(std::mt19937_64& rng,
                                       unsigned universe = 50) {
  GlueFixture fx;
  unsigned r = 1 + static_cast<unsigned>(rng() % 3);
  std::vector<Enumeration<std::uint64_t>> member_enums;
  for (unsigned i = 0; i < r; ++i) {
    std::set<std::uint64_t> s;
    if (rng() % 4 == 0) {
      // arithmetic progression restricted to the universe
      std::uint64_t start = rng() % 5, stride = 1 + rng() % 4;
      for (std::uint64_t x = start; x < universe; x += stride) s.insert(x);
    } else {
      for (std::uint64_t x = 0; x < universe; ++x)
        if (rng() % 3 == 0) s.insert(x);
    }
    fx.member_sets.push_back(s);
    member_enums.push_back(
        Enumeration<std::uint64_t>::from_items({s.begin(), s.end()}));
  }

  std::set<std::uint64_t> union_pts;
  for (const auto& s : fx.member_sets) union_pts.insert(s.begin(), s.end());
  std::map<std::uint64_t, std::uint64_t> f;
  for (std::uint64_t x : union_pts)
    if (rng() % 10 < 7) f[x] = rng() % 10;

  std::vector<PartialEvaluator> pieces;
  for (unsigned i = 0; i < r; ++i) {
    std::map<std::vector<std::uint64_t>, PartialEvaluator::TableEntry> table;
    for (std::uint64_t x = 0; x < universe; ++x) {
      std::uint64_t value = f.contains(x) && fx.member_sets[i].contains(x)
                                ? f.at(x)
                                : rng() % 10;
      table[{x}] = {value, 1 + rng() % 6};
    }
    pieces.push_back(PartialEvaluator::table(std::move(table)));
  }

  fx.instance = make_glue_instance(1, std::move(pieces),
                                   separators_from_re(member_enums));
  for (auto& [x, y] : f) fx.graph.emplace_back(x, y);

  // Stage bound: for each graph point, the stage at which the mask of its
  // containing members fires (its separator has shown the point and every
  // selected evaluator has halted).
  for (auto& [x, y] : f) {
    Mask k = 0;
    for (unsigned i = 0; i < r; ++i)
      if (fx.member_sets[i].contains(x)) k |= Mask{1} << i;
    const auto& sep = fx.instance.separators.at(k);
    std::uint64_t idx = 0;
    while (true) {
      auto item = sep.step(idx);
      if (item && *item == x) break;
      ++idx;
    }
    std::uint64_t bound = idx + 1;
    for (unsigned i = 0; i < r; ++i) {
      if (!mask_has(k, i)) continue;
      std::uint64_t stage = 1;
      while (!fx.instance.pieces[i].eval(std::vector<std::uint64_t>{x}, stage))
        ++stage;
      bound = std::max(bound, stage);
    }
    fx.budget_bound = std::max(fx.budget_bound, bound);
  }
  return fx;
}

}  // namespace quilt::testing

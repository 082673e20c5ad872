#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quilt/collection.hpp"

using namespace quilt;

namespace {

using IntSet = std::set<int>;
using IntCollection = Collection<IntSet>;

IntCollection coll(std::vector<IntSet> sets) {
  IntCollection a;
  for (std::size_t i = 0; i < sets.size(); ++i)
    a.members.push_back({"A" + std::to_string(i), std::move(sets[i])});
  return a;
}

IntSet random_subset(std::mt19937_64& rng, int universe, double density = 0.4) {
  IntSet s;
  for (int x = 0; x < universe; ++x)
    if (std::uniform_real_distribution<>(0, 1)(rng) < density) s.insert(x);
  return s;
}

}  // namespace

TEST_CASE("difference sets of a subcollection") {
  auto a = coll({{1, 2}, {2, 3}});
  auto [p0, q0] = diff_sets(a, 0b01);
  CHECK(p0 == IntSet{1});
  CHECK(q0 == IntSet{3});
  auto [p1, q1] = diff_sets(a, 0b11);
  CHECK(p1 == IntSet{1, 2, 3});
  CHECK(q1 == IntSet{});
  auto [p2, q2] = diff_sets(a, 0b00);
  CHECK(p2 == IntSet{});
  CHECK(q2 == IntSet{1, 2, 3});
}

TEST_CASE("difference sets are disjoint") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<IntSet> sets;
    for (int i = 0; i < 3; ++i) sets.push_back(random_subset(rng, 10));
    auto a = coll(std::move(sets));
    for (Mask k = 0; k <= full_mask(3); ++k) {
      auto [p, q] = diff_sets(a, k);
      CHECK(set_is_empty(set_intersection(p, q)));
    }
  }
}

TEST_CASE("two-valued witness follows the difference sets") {
  auto a = coll({{1, 2}, {2, 3}});
  auto w = const_witness(a, Mask{0b01}, 7, 9);
  CHECK(w.graph == std::map<int, int>{{1, 7}, {3, 9}});

  auto wfull = const_witness(a, Mask{0b11}, 7, 9);
  CHECK(wfull.graph == std::map<int, int>{{1, 7}, {2, 7}, {3, 7}});

  auto b = coll({{1}, {2}});
  auto wb = const_witness(b, Mask{0b10}, 0, 1);
  CHECK(wb.graph == std::map<int, int>{{2, 0}, {1, 1}});

  CHECK_THROWS_AS(const_witness(a, Mask{0b01}, 5, 5), std::invalid_argument);
}

TEST_CASE("witness restrictions are constant on every member") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<IntSet> sets;
    int r = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < r; ++i) sets.push_back(random_subset(rng, 12));
    auto a = coll(std::move(sets));
    Mask k = static_cast<Mask>(rng() % (full_mask(a.size()) + 1));
    auto w = const_witness(a, k, 0, 1);
    CHECK(set_is_subset(IntSet{[&] {
                          IntSet d;
                          for (auto& [x, v] : w.graph) d.insert(x);
                          return d;
                        }()},
                        union_all(a)));
    for (const auto& m : a.members) {
      std::set<int> values;
      for (auto& [x, v] : w.graph)
        if (m.set.contains(x)) values.insert(v);
      CHECK(values.size() <= 1);
    }
  }
}

TEST_CASE("separator split statements hold for any valid separator") {
  // For H with H >= P and H disjoint from Q: (a) points of the union inside
  // H lie in union(K); (b) points whose member set is inside K lie in H.
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<IntSet> sets;
    int r = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < r; ++i) sets.push_back(random_subset(rng, 12));
    auto a = coll(std::move(sets));
    Mask k = static_cast<Mask>(rng() % (full_mask(a.size()) + 1));
    auto [p, q] = diff_sets(a, k);
    IntSet h = p;
    for (int x = 0; x < 12; ++x)
      if (!q.contains(x) && rng() % 2) h.insert(x);

    IntSet ua = union_all(a);
    IntSet uk = union_where(a, k);
    for (int x : set_intersection(ua, h)) CHECK(uk.contains(x));
    for (int x : ua) {
      bool inside = true;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a.members[i].set.contains(x) && !mask_has(k, i)) inside = false;
      if (inside) CHECK(h.contains(x));
    }
  }
}

namespace {

SeparatorOracle<IntSet, IntSet> pool_oracle(
    std::shared_ptr<const std::vector<IntSet>> pool, IntSet ground) {
  SeparatorOracle<IntSet, IntSet> o;
  o.find = [pool](const IntSet& p, const IntSet& q) -> std::optional<IntSet> {
    for (const IntSet& h : *pool)
      if (set_is_subset(p, h) && set_is_empty(set_intersection(h, q)))
        return h;
    return std::nullopt;
  };
  o.empty_separator = IntSet{};
  o.ground_separator = std::move(ground);
  return o;
}

}  // namespace

TEST_CASE("criterion over unrestricted separators always holds") {
  auto a = coll({{1}, {3}});
  auto pool = std::make_shared<const std::vector<IntSet>>(
      std::vector<IntSet>{{1}, {3}, {1, 3}, {}});
  auto report = criterion_check(a, pool_oracle(pool, {1, 3}));
  CHECK(report.holds);
  CHECK(report.separators.at(0b01) == IntSet{1});
}

TEST_CASE("criterion fails when only trivial separators exist") {
  // Indiscrete opens over {a=0, b=1}: neither {} nor {0,1} separates {0}
  // from {1}.
  auto a = coll({{0}, {1}});
  auto pool = std::make_shared<const std::vector<IntSet>>(
      std::vector<IntSet>{{}, {0, 1}});
  auto report = criterion_check(a, pool_oracle(pool, {0, 1}));
  CHECK_FALSE(report.holds);
  CHECK(report.failures == std::vector<Mask>{0b01, 0b10});
  CHECK(report.separators.empty());
}

TEST_CASE("single-member collections hold vacuously") {
  auto a = coll({{1, 2}});
  auto pool = std::make_shared<const std::vector<IntSet>>(
      std::vector<IntSet>{});
  auto report = criterion_check(a, pool_oracle(pool, {1, 2}));
  CHECK(report.holds);
  CHECK(report.separators.empty());
}

TEST_CASE("including trivial masks supplies their canonical separators") {
  auto a = coll({{1}, {3}});
  auto pool = std::make_shared<const std::vector<IntSet>>(
      std::vector<IntSet>{{1}, {3}});
  auto o = pool_oracle(pool, {1, 3});
  auto with = criterion_check(a, o, TrivialMasks::kInclude);
  auto without = criterion_check(a, o, TrivialMasks::kSkip);
  CHECK(with.holds == without.holds);
  CHECK(with.separators.at(0) == IntSet{});
  CHECK(with.separators.at(full_mask(2)) == IntSet{1, 3});
}

TEST_CASE("criterion verdict is invariant under duplicating a member") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<IntSet> sets;
    int r = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < r; ++i) sets.push_back(random_subset(rng, 8));
    std::vector<IntSet> poolsets;
    for (int i = 0; i < 6; ++i) poolsets.push_back(random_subset(rng, 8));
    auto pool =
        std::make_shared<const std::vector<IntSet>>(std::move(poolsets));
    auto a = coll(sets);
    std::size_t dup = rng() % sets.size();
    sets.push_back(sets[dup]);
    auto doubled = coll(std::move(sets));
    auto o = pool_oracle(pool, random_subset(rng, 8, 1.0));
    CHECK(criterion_check(a, o).holds == criterion_check(doubled, o).holds);
  }
}

TEST_CASE("relevant core intersects members with the reachable points") {
  auto a = coll({{0, 1}});
  auto out = relevant_core(a, [](int x) { return x == 0; });
  CHECK(out.members[0].set == IntSet{0});

  auto same = relevant_core(a, [](int) { return true; });
  CHECK(same.members[0].set == IntSet{0, 1});

  auto empty = relevant_core(coll({{}}), [](int) { return true; });
  CHECK(empty.members[0].set == IntSet{});
}

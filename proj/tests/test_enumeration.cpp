#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quilt/enumeration.hpp"

using namespace quilt;

namespace {

Enumeration<std::uint64_t> explicit_set(std::vector<std::uint64_t> xs) {
  return Enumeration<std::uint64_t>::from_items(std::move(xs));
}

}  // namespace

TEST_CASE("semidecide on an explicit stream") {
  auto e = explicit_set({3, 5});
  CHECK(semidecide(e, std::uint64_t{3}, 1));
  CHECK_FALSE(semidecide(e, std::uint64_t{5}, 1));
  CHECK(semidecide(e, std::uint64_t{5}, 2));
}

TEST_CASE("semidecide is monotone in the budget") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::uint64_t> xs;
    for (int i = 0; i < 20; ++i) xs.push_back(rng() % 30);
    auto e = explicit_set(xs);
    std::uint64_t x = rng() % 30;
    std::uint64_t b = rng() % 25;
    if (semidecide(e, x, b)) {
      REQUIRE(semidecide(e, x, b + 1 + rng() % 10));
    }
  }
}

TEST_CASE("every member of a finite set is seen within the set size") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<std::uint64_t> s;
    while (s.size() < 1 + rng() % 12) s.insert(rng() % 100);
    auto e = explicit_set({s.begin(), s.end()});
    for (std::uint64_t x : s) REQUIRE(semidecide(e, x, s.size()));
  }
}

TEST_CASE("steps are pure functions of the index") {
  auto e = interleave(explicit_set({1, 2, 3}), naturals());
  for (std::uint64_t i = 0; i < 50; ++i) REQUIRE(e.step(i) == e.step(i));
}

TEST_CASE("interleave reaches every factor's items") {
  auto e = interleave(std::vector{explicit_set({10, 11}), explicit_set({20}),
                                  explicit_set({30, 31, 32})});
  auto seen = prefix_set(e, 20);
  CHECK(seen == std::set<std::uint64_t>{10, 11, 20, 30, 31, 32});
}

TEST_CASE("interleave of nothing is the empty stream") {
  auto e = interleave(std::vector<Enumeration<std::uint64_t>>{});
  CHECK(prefix_set(e, 100).empty());
}

TEST_CASE("intersection emits exactly the common items") {
  auto e = intersect_all(std::vector{explicit_set({1, 2, 3, 4}),
                                     explicit_set({2, 4, 6}),
                                     explicit_set({0, 2, 4, 8})});
  // All underlying items appear within prefix budget 4, so every common item
  // is emitted at some step below pair_code(4, r).
  auto seen = prefix_set(e, 200);
  CHECK(seen == std::set<std::uint64_t>{2, 4});
}

TEST_CASE("intersection never emits a non-common item") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint64_t> a, b;
    for (int i = 0; i < 8; ++i) a.push_back(rng() % 12);
    for (int i = 0; i < 8; ++i) b.push_back(rng() % 12);
    auto e = intersect_all(std::vector{explicit_set(a), explicit_set(b)});
    for (auto x : prefix_set(e, 300)) {
      CHECK(std::ranges::find(a, x) != a.end());
      CHECK(std::ranges::find(b, x) != b.end());
    }
  }
}

TEST_CASE("map and filter preserve stream discipline") {
  auto doubled = map_stream(naturals(), [](std::uint64_t n) { return 2 * n; });
  CHECK(doubled.step(3) == std::optional<std::uint64_t>{6});
  auto evens = filter_stream(naturals(),
                             [](std::uint64_t n) { return n % 2 == 0; });
  CHECK(evens.step(4) == std::optional<std::uint64_t>{4});
  CHECK_FALSE(evens.step(5).has_value());
}

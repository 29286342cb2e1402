#include <doctest.h>

#include <numeric>
#include <set>

#include "csg/enumeration.hpp"
#include "csg/errors.hpp"
#include "csg/game_io.hpp"
#include "oracle.hpp"

using namespace csg;

TEST_CASE("antichain count matches the Boolean-function oracle for n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    long total = 0;
    for (const auto& [shape, count] : oracle::shape_counts(n))
      total += count;
    CHECK(count_all_games(n) == total);
  }
}

TEST_CASE("both tabulations match the oracle's per (t, r) counts for n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    const auto expected = oracle::shape_counts(n);
    for (const Tabulation& tab : {tabulate_games(n), tabulate_typed(n)}) {
      std::map<std::pair<int, int>, long> got;
      for (const auto& [tr, count] : tab.counts())
        got[tr] = count.convert_to<long>();
      CHECK(got == expected);
    }
  }
}

TEST_CASE("typed engine total equals the antichain count") {
  for (int n = 1; n <= 7; ++n)
    CHECK(tabulate_typed(n).total() == count_all_games(n));
}

TEST_CASE("tabulations agree at n = 7" * doctest::description("per (t, r) cell")) {
  CHECK(tabulate_typed(7) == tabulate_games(7));
}

TEST_CASE("every listed game validates and appears once, n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    std::set<std::string> seen;
    BigInt listed = 0;
    for (int t = 1; t <= n; ++t)
      enumerate_typed(n, t, std::nullopt, [&](const TypedGame& g) {
        CHECK(is_valid(g));
        CHECK(g.voters() == n);
        CHECK(g.types() == t);
        CHECK(seen.insert(to_text(g)).second);
        listed += 1;
      });
    CHECK(listed == count_all_games(n));
  }
}

TEST_CASE("antichain visitor yields pairwise incomparable vertices, each antichain once") {
  for (int n = 1; n <= 5; ++n) {
    const ComparabilityGraph graph(n);
    std::set<std::vector<std::uint64_t>> seen;
    for_each_antichain(n, [&](std::span<const std::uint64_t> a) {
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
          CHECK_FALSE(graph.adjacent(a[i], a[j]));
      std::vector<std::uint64_t> sorted(a.begin(), a.end());
      std::sort(sorted.begin(), sorted.end());
      CHECK(seen.insert(sorted).second);
    });
    CHECK(BigInt(seen.size()) == count_all_games(n));
  }
}

TEST_CASE("single-row counts: binomial identity and sum 2^n - 1") {
  for (int n = 1; n <= 12; ++n) {
    BigInt sum = 0;
    for (int t = 1; t <= n; ++t) {
      const BigInt c = count_typed(n, t, 1);
      sum += c;
      if (t >= 2)
        CHECK(c == binomial(n + 1, 2 * t - 1));
    }
    CHECK(sum == pow2(n) - 1);
  }
}

TEST_CASE("counts do not depend on the number of workers") {
  for (int jobs : {2, 3, 8}) {
    EnumerationOptions o;
    o.jobs = jobs;
    CHECK(count_all_games(7, o) == count_all_games(7));
    CHECK(tabulate_games(6, o) == tabulate_games(6));
    CHECK(tabulate_typed(8, o) == tabulate_typed(8));
    CHECK(count_typed(14, 3, 2, o) == count_typed(14, 3, 2));
    CHECK(count_typed(10, 4, std::nullopt, o) == count_typed(10, 4, std::nullopt));
  }
}

TEST_CASE("r-restricted counts sum to the unrestricted count") {
  for (int n = 2; n <= 9; ++n)
    for (int t = 1; t <= std::min(n, 4); ++t) {
      BigInt sum = 0;
      for (int r = 1; r <= static_cast<int>(max_shift_minimal(n)); ++r)
        sum += count_typed(n, t, r);
      CHECK(sum == count_typed(n, t, std::nullopt));
    }
}

TEST_CASE("compositions are the ordered positive splits") {
  for (int n = 1; n <= 10; ++n)
    for (int t = 1; t <= n; ++t) {
      const auto cs = compositions(n, t);
      CHECK(BigInt(cs.size()) == binomial(n - 1, t - 1));
      for (const auto& c : cs) {
        CHECK(static_cast<int>(c.size()) == t);
        CHECK(std::accumulate(c.begin(), c.end(), 0) == n);
      }
    }
}

TEST_CASE("limits are configuration and raise ResourceLimit") {
  EnumerationOptions o;
  o.limits.count_max_n = 5;
  o.limits.classify_max_n = 4;
  CHECK_THROWS_AS(count_all_games(6, o), ResourceLimit);
  CHECK_THROWS_AS(tabulate_games(5, o), ResourceLimit);
  CHECK(count_all_games(5, o) == 117);
  CHECK_THROWS_AS(count_all_games(10), ResourceLimit);
}

TEST_CASE("bad arguments") {
  CHECK_THROWS_AS(count_typed(3, 4, std::nullopt), InvalidInput);
  CHECK_THROWS_AS(count_typed(0, 1, std::nullopt), InvalidInput);
}

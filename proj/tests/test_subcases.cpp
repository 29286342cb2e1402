#include <doctest.h>

#include <map>

#include "csg/enumeration.hpp"
#include "csg/errors.hpp"
#include "csg/polytope.hpp"
#include "csg/subcases.hpp"

using namespace csg;

TEST_CASE("tuple counts for small classes") {
  CHECK(enumerate_subcases(3, 2).size() == 9);
  CHECK(enumerate_subcases(4, 2).size() == 49);
  CHECK(enumerate_subcases(3, 3).size() == 46);
  CHECK(enumerate_subcases(5, 2).size() == 217);
}

TEST_CASE("tuple enumeration does not depend on the number of workers") {
  SubcaseOptions o;
  o.jobs = 4;
  CHECK(enumerate_subcases(3, 3, o) == enumerate_subcases(3, 3));
}

TEST_CASE("every game lies in exactly one tuple, (3,2), n <= 7") {
  const auto tuples = enumerate_subcases(3, 2);
  for (int n = 3; n <= 7; ++n) {
    std::vector<RationalLinearSystem> systems;
    for (const auto& tp : tuples)
      systems.push_back(subcase_system(tp, n));
    enumerate_typed(n, 3, 2, [&](const TypedGame& g) {
      int hits = 0;
      std::size_t hit = 0;
      for (std::size_t k = 0; k < tuples.size(); ++k)
        if (systems[k].satisfied_by(game_point(g, systems[k]))) {
          ++hits;
          hit = k;
        }
      REQUIRE(hits == 1);
      CHECK(tuples[hit] == classify_game(g));
    });
  }
}

TEST_CASE("per-tuple lattice counts partition cs(n,t,r)") {
  for (auto [t, r] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{3, 3}}) {
    const auto tuples = enumerate_subcases(t, r);
    for (int n = t; n <= 8; ++n) {
      std::map<SubcaseTuple, long> buckets;
      enumerate_typed(n, t, r, [&](const TypedGame& g) { ++buckets[classify_game(g)]; });
      BigInt total = 0;
      for (const auto& tp : tuples) {
        const BigInt c = count_lattice_points(subcase_system(tp, n));
        total += c;
        CHECK(c == (buckets.count(tp) ? buckets[tp] : 0));
      }
      CHECK(total == count_typed(n, t, r));
    }
  }
}

TEST_CASE("classified tuples satisfy the monotonicity relations") {
  for (auto [t, r] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{4, 2}, std::pair{4, 3}})
    for (int n = t; n <= 8; ++n)
      enumerate_typed(n, t, r, [&](const TypedGame& g) {
        const SubcaseTuple tp = classify_game(g);
        CHECK(tuple_violations(tp).empty());
        for (int i = 1; i <= r; ++i)
          for (int j1 = i + 1; j1 <= r; ++j1)
            for (int j2 = j1 + 1; j2 <= r; ++j2)
              CHECK(tp.a.at({i, j1}) >= tp.a.at({i, j2}));
        for (int j = 1; j <= r; ++j)
          for (int i1 = 1; i1 < j; ++i1)
            for (int i2 = i1 + 1; i2 < j; ++i2)
              CHECK(tp.a.at({i1, j}) <= tp.a.at({i2, j}));
      });
}

TEST_CASE("a column can increase downwards") {
  // Shows the column relation runs upward: a(1,3) < a(2,3) happens.
  bool seen = false;
  for (int n = 3; n <= 7 && !seen; ++n)
    enumerate_typed(n, 3, 3, [&](const TypedGame& g) {
      const SubcaseTuple tp = classify_game(g);
      seen = seen || tp.a.at({1, 3}) < tp.a.at({2, 3});
    });
  CHECK(seen);
}

TEST_CASE("tuple text and JSON forms") {
  for (const auto& tp : enumerate_subcases(3, 3)) {
    CHECK(parse_subcase_tuple(tp.to_string(), 3, 3) == tp);
    CHECK(tp.complete());
  }
  const SubcaseTuple first = enumerate_subcases(3, 2).front();
  CHECK(first.to_string() == "a=[(1,2):1]; b=[(1,2):2]; c=[1,1]; d=[0,0]");
  CHECK(first.to_json().dump() == first.to_json().dump());
  CHECK_THROWS_AS(parse_subcase_tuple("a=[(1,2):1]; b=[(1,2):2]", 3, 2), InvalidInput);
}

TEST_CASE("tuple systems with a free n") {
  const auto tuples = enumerate_subcases(3, 2);
  const auto s = subcase_system(tuples.front());
  CHECK(s.has_variable("n"));
  for (const auto& tp : tuples)
    CHECK(rational_feasibility(subcase_system(tp)) != Feasibility::Infeasible);
}

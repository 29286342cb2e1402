#include <doctest.h>

#include <set>

#include "csg/core_model.hpp"
#include "csg/enumeration.hpp"
#include "csg/errors.hpp"
#include "csg/game_io.hpp"
#include "oracle.hpp"

using namespace csg;

namespace {

std::vector<std::vector<int>> small_profiles(int len, int max_entry) {
  std::vector<std::vector<int>> out{{}};
  for (int k = 0; k < len; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& p : out)
      for (int v = 0; v <= max_entry; ++v) {
        auto q = p;
        q.push_back(v);
        next.push_back(q);
      }
    out = next;
  }
  return out;
}

std::vector<TypedGame> typed_games(int n) {
  std::vector<TypedGame> games;
  for (int t = 1; t <= n; ++t)
    enumerate_typed(n, t, std::nullopt, [&](const TypedGame& g) { games.push_back(g); });
  return games;
}

}  // namespace

TEST_CASE("partial-sum order is a partial order on short profiles") {
  for (int len = 1; len <= 3; ++len) {
    const auto ps = small_profiles(len, 3);
    for (const auto& a : ps) {
      CHECK(compare_partial_sum(a, a) == Comparison::Equal);
      for (const auto& b : ps) {
        if (a != b && leq_partial_sum(a, b))
          CHECK_FALSE(leq_partial_sum(b, a));
        if (!leq_partial_sum(a, b))
          continue;
        for (const auto& c : ps)
          if (leq_partial_sum(b, c))
            CHECK(leq_partial_sum(a, c));
      }
    }
  }
}

TEST_CASE("partial-sum order, length 4 antisymmetry and comparison consistency") {
  const auto ps = small_profiles(4, 3);
  for (const auto& a : ps)
    for (const auto& b : ps) {
      const auto ab = compare_partial_sum(a, b);
      const auto ba = compare_partial_sum(b, a);
      if (ab == Comparison::LessEq)
        CHECK(ba == Comparison::GreaterEq);
      if (ab == Comparison::Incomparable)
        CHECK(ba == Comparison::Incomparable);
      CHECK((ab == Comparison::Equal) == (a == b));
    }
}

TEST_CASE("lexicographic comparison is a total order") {
  const auto ps = small_profiles(4, 3);
  for (const auto& a : ps)
    for (const auto& b : ps) {
      const auto ab = compare_lex(a, b);
      CHECK((ab == LexOrder::Equal) == (a == b));
      CHECK((ab == LexOrder::Less) == (a < b));
    }
}

TEST_CASE("strictly below in partial-sum order implies lexicographically smaller on 0/1 vectors") {
  for (int t = 1; t <= 10; ++t) {
    const int size = 1 << t;
    for (int x = 0; x < size; ++x)
      for (int y = 0; y < size; ++y) {
        if (x == y)
          continue;
        std::vector<int> a(t), b(t);
        for (int k = 0; k < t; ++k) {
          a[k] = (x >> (t - 1 - k)) & 1;
          b[k] = (y >> (t - 1 - k)) & 1;
        }
        if (leq_partial_sum(a, b))
          CHECK(compare_lex(b, a) == LexOrder::Greater);
      }
  }
}

TEST_CASE("comparison rejects length mismatch") {
  std::vector<int> a{1, 2}, b{1};
  CHECK_THROWS_AS(compare_partial_sum(a, b), InvalidInput);
  CHECK_THROWS_AS(compare_lex(a, b), InvalidInput);
}

TEST_CASE("validate reports each failed condition") {
  CHECK(is_valid(TypedGame({1, 3}, {{1, 1}, {0, 3}})));
  CHECK(is_valid(TypedGame({4}, {{2}})));
  CHECK_FALSE(is_valid(TypedGame({4}, {{0}})));
  const auto comparable = validate(TypedGame({2, 2}, {{2, 0}, {1, 0}}));
  REQUIRE_FALSE(comparable.empty());
  CHECK(comparable[0].property == Property::Comparable);
  const auto bounds = validate(TypedGame({1, 2}, {{2, 0}}));
  REQUIRE_FALSE(bounds.empty());
  CHECK(bounds[0].property == Property::EntryBounds);
  CHECK_FALSE(is_valid(TypedGame({0, 2}, {{0, 1}})));
  // Classes 1 and 2 would be equally desirable.
  const auto column = validate(TypedGame({1, 3}, {{1, 3}}));
  REQUIRE_FALSE(column.empty());
  CHECK(column[0].property == Property::ColumnCondition);
}

TEST_CASE("rows are stored lexicographically descending") {
  TypedGame g({1, 3}, {{0, 3}, {1, 1}});
  CHECK(g.rows() == std::vector<CoalitionProfile>{{1, 1}, {0, 3}});
  CHECK(g.voters() == 4);
  CHECK(g.num_rows() == 2);
}

TEST_CASE("binary and typed forms are mutually inverse for n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& g : typed_games(n)) {
      const auto binary = typed_to_binary(g);
      CHECK(binary_to_typed(binary, n) == g);
    }
    for_each_antichain(n, [&](std::span<const std::uint64_t> vertices) {
      std::vector<BinaryCoalition> antichain;
      for (auto v : vertices)
        antichain.push_back(BinaryCoalition::from_vertex(n, v));
      const TypedGame g = binary_to_typed(antichain, n);
      CHECK(is_valid(g));
      auto back = typed_to_binary(g);
      std::sort(back.begin(), back.end());
      std::sort(antichain.begin(), antichain.end());
      CHECK(back == antichain);
    });
  }
}

TEST_CASE("winning profiles form an up-set and are exactly the complement of the shift-maximal losers' down-set") {
  for (int n = 1; n <= 5; ++n)
    for (const auto& g : typed_games(n)) {
      const auto profiles = all_profiles(g.class_sizes());
      const auto losers = shift_maximal_losing(g);
      for (const auto& p : profiles) {
        const bool wins = classify_profile(g, p) == Outcome::Winning;
        bool above_row = false;
        for (const auto& row : g.rows())
          above_row = above_row || leq_partial_sum(row, p);
        bool below_loser = false;
        for (const auto& l : losers)
          below_loser = below_loser || leq_partial_sum(p, l);
        CHECK(wins == above_row);
        CHECK(wins == !below_loser);
        if (!wins)
          continue;
        for (const auto& q : profiles)
          if (leq_partial_sum(p, q))
            CHECK(classify_profile(g, q) == Outcome::Winning);
      }
    }
}

TEST_CASE("classify_profile checks the profile against the class sizes") {
  TypedGame g({1, 3}, {{1, 1}, {0, 3}});
  std::vector<int> too_long{1, 1, 1}, too_big{2, 0};
  CHECK_THROWS_AS(classify_profile(g, too_long), InvalidInput);
  CHECK_THROWS_AS(classify_profile(g, too_big), InvalidInput);
}

TEST_CASE("vertex numbering puts voter 1 in the most significant bit") {
  const auto c = BinaryCoalition::from_vertex(4, 0b1001);
  CHECK(c.to_string() == "1001");
  CHECK(c.vertex() == 9);
  CHECK(BinaryCoalition::from_string("0110").vertex() == 6);
  CHECK_THROWS_AS(BinaryCoalition::from_string("0120"), InvalidInput);
}

TEST_CASE("binary_to_typed rejects malformed antichains") {
  std::vector<BinaryCoalition> comparable{BinaryCoalition::from_string("110"), BinaryCoalition::from_string("100")};
  CHECK_THROWS_AS(binary_to_typed(comparable, 3), InvalidInput);
  std::vector<BinaryCoalition> zero{BinaryCoalition::from_string("000")};
  CHECK_THROWS_AS(binary_to_typed(zero, 3), InvalidInput);
  CHECK_THROWS_AS(binary_to_typed(std::vector<BinaryCoalition>{}, 3), InvalidInput);
}

TEST_CASE("max_shift_minimal matches the subset-sum oracle") {
  for (int n = 1; n <= 30; ++n)
    CHECK(max_shift_minimal(n) == oracle::max_subset_sum_multiplicity(n));
  CHECK_THROWS_AS(max_shift_minimal(0), InvalidInput);
}

TEST_CASE("max_shift_minimal equals the largest row count found by enumeration for n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    int most = 0;
    for (int t = 1; t <= n; ++t)
      enumerate_typed(n, t, std::nullopt, [&](const TypedGame& g) { most = std::max(most, g.num_rows()); });
    CHECK(BigInt(most) == max_shift_minimal(n));
  }
}

TEST_CASE("two-type decomposition round trip") {
  for (int n = 2; n <= 9; ++n)
    enumerate_typed(n, 2, std::nullopt, [&](const TypedGame& g) {
      if (g.num_rows() < 2)
        return;
      const T2Decomposition d = t2_decompose(g);
      CHECK(d.num_rows() == g.num_rows());
      CHECK(d.voters() == n);
      CHECK(t2_compose(d) == g);
    });
  CHECK_THROWS_AS(t2_decompose(TypedGame({4}, {{2}})), InvalidInput);
  CHECK_THROWS_AS(t2_compose(T2Decomposition{{}, {1}, 0, 0}), InvalidInput);
}

TEST_CASE("text and JSON forms round-trip") {
  std::set<std::string> seen;
  for (const auto& g : typed_games(5)) {
    const std::string text = to_text(g);
    CHECK(game_from_text(text) == g);
    CHECK(game_from_json(to_json(g)) == g);
    CHECK(seen.insert(text).second);
  }
  CHECK(to_text(TypedGame({1, 3}, {{1, 1}, {0, 3}})) == "csg n=4 t=2 r=2; nvec=[1,3]; M=[[1,1],[0,3]]");
  CHECK_THROWS_AS(game_from_text("csg n=5 t=2 r=2; nvec=[1,3]; M=[[1,1],[0,3]]"), InvalidInput);
  CHECK_THROWS_AS(game_from_text("csg n=4 t=2 r=2; nvec=[1,3]"), InvalidInput);
}

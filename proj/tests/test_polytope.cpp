#include <doctest.h>

#include <random>
#include <set>

#include "csg/ehrhart.hpp"
#include "csg/enumeration.hpp"
#include "csg/errors.hpp"
#include "csg/polytope.hpp"

using namespace csg;

namespace {

bool holds(const RationalLinearSystem& s, const std::vector<long>& x) {
  for (int v = 0; v < s.num_variables(); ++v) {
    const auto& var = s.variables()[v];
    if ((var.lower && x[v] < *var.lower) || (var.upper && x[v] > *var.upper))
      return false;
  }
  for (const auto& c : s.constraints()) {
    Rational lhs = 0;
    for (const auto& term : c.terms)
      lhs += term.coefficient * x[term.var];
    if ((c.relation == Relation::LessEq && lhs > c.rhs) || (c.relation == Relation::GreaterEq && lhs < c.rhs) ||
        (c.relation == Relation::Equal && lhs != c.rhs))
      return false;
  }
  return true;
}

long brute_count(const RationalLinearSystem& s) {
  const int nv = s.num_variables();
  std::vector<long> x(nv);
  for (int v = 0; v < nv; ++v)
    x[v] = *s.variables()[v].lower;
  long count = 0;
  while (true) {
    if (holds(s, x))
      ++count;
    int v = nv - 1;
    while (v >= 0 && x[v] == *s.variables()[v].upper) {
      x[v] = *s.variables()[v].lower;
      --v;
    }
    if (v < 0)
      return count;
    ++x[v];
  }
}

RationalLinearSystem random_system(std::mt19937& rng, int vars, int width) {
  std::uniform_int_distribution<int> coef(-3, 3), rhs(-4, 6), rel(0, 2), den(1, 3), ncons(1, 5);
  RationalLinearSystem s;
  for (int v = 0; v < vars; ++v)
    s.add_variable("x" + std::to_string(v), -width / 2, width - width / 2 - 1);
  const int m = ncons(rng);
  for (int k = 0; k < m; ++k) {
    std::vector<Term> terms;
    for (int v = 0; v < vars; ++v)
      if (int c = coef(rng); c != 0)
        terms.push_back({v, Rational(c, den(rng))});
    if (terms.empty())
      continue;
    s.add_constraint(terms, static_cast<Relation>(rel(rng)), Rational(rhs(rng), den(rng)), "c" + std::to_string(k));
  }
  return s;
}

}  // namespace

TEST_CASE("demo polytope dilations") {
  CHECK(demo_polytope_count(0) == 1);
  CHECK(demo_polytope_count(1) == 9);
  CHECK(demo_polytope_count(2) == 27);
  for (long n = 0; n <= 12; ++n) {
    long expected = 0;
    for (long x1 = 0; 2 * x1 <= 5 * n; ++x1)
      expected += std::max(0L, 3 * n - x1 + 1);
    CHECK(demo_polytope_count(n) == expected);
  }
}

TEST_CASE("random systems: counts with and without propagation match brute force") {
  std::mt19937 rng(20240611);
  for (int round = 0; round < 300; ++round) {
    const int vars = 1 + round % 12;
    const int width = vars <= 4 ? 7 : vars <= 6 ? 4 : vars <= 8 ? 3 : 2;
    const auto s = random_system(rng, vars, width);
    const long expected = brute_count(s);
    CAPTURE(s.to_lp());
    CHECK(count_lattice_points(s) == expected);
    CHECK(count_lattice_points(s, {false, std::nullopt}) == expected);
  }
}

TEST_CASE("Fourier-Motzkin never refutes a system that has lattice points") {
  std::mt19937 rng(77);
  int refuted = 0;
  for (int round = 0; round < 400; ++round) {
    const auto s = random_system(rng, 1 + round % 6, 5);
    const Feasibility f = rational_feasibility(s);
    if (count_lattice_points(s) > 0)
      CHECK(f != Feasibility::Infeasible);
    refuted += f == Feasibility::Infeasible;
  }
  CHECK(refuted > 0);
}

TEST_CASE("Fourier-Motzkin on hand-made systems") {
  RationalLinearSystem empty;
  const int x = empty.add_variable("x", 0, 10);
  empty.add_constraint({{x, 1}}, Relation::GreaterEq, 6);
  empty.add_constraint({{x, 2}}, Relation::LessEq, 11);
  CHECK(rational_feasibility(empty) == Feasibility::Infeasible);

  // Feasible over the rationals, no integer point.
  RationalLinearSystem half;
  const int a = half.add_variable("a", 0, 5);
  const int b = half.add_variable("b", 0, 5);
  half.add_constraint({{a, 2}, {b, 2}}, Relation::Equal, 3);
  CHECK(rational_feasibility(half) == Feasibility::Feasible);
  CHECK(count_lattice_points(half) == 0);

  FourierMotzkinOptions tiny;
  tiny.max_constraints = 1;
  const auto big = build_big_m(4, 2, 2);
  CHECK(rational_feasibility(big, tiny) == Feasibility::ResourceLimit);
}

TEST_CASE("compact two-type model counts cs(n,2,r)") {
  for (int n = 2; n <= 12; ++n)
    for (int r = 1; r <= 4; ++r)
      CHECK(count_lattice_points(build_compact_t2(n, r)) == count_typed(n, 2, r));
  CHECK(rational_feasibility(build_compact_t2(2, 2)) == Feasibility::Infeasible);
  CHECK(rational_feasibility(build_compact_t2(6, 2)) == Feasibility::Feasible);
}

TEST_CASE("Big-M model: each game has exactly one completion") {
  for (int n = 1; n <= 5; ++n)
    for (int t = 1; t <= n; ++t)
      for (int r = 1; r <= static_cast<int>(max_shift_minimal(n)); ++r) {
        if (t + r <= 2)
          continue;
        const auto s = build_big_m(n, t, r);
        const int game_vars = t + r * t;
        std::set<std::vector<long>> projections;
        long points = 0;
        enumerate_lattice_points(s, [&](std::span<const long> x) {
          ++points;
          CHECK(holds(s, std::vector<long>(x.begin(), x.end())));
          projections.insert(std::vector<long>(x.begin(), x.begin() + game_vars));
          return true;
        });
        CAPTURE(n);
        CAPTURE(t);
        CAPTURE(r);
        CHECK(static_cast<long>(projections.size()) == points);
        CHECK(count_typed(n, t, r) == points);
        for (const auto& p : projections) {
          std::vector<int> sizes(p.begin(), p.begin() + t);
          std::vector<CoalitionProfile> rows(r, CoalitionProfile(t));
          for (int i = 0; i < r; ++i)
            for (int j = 0; j < t; ++j)
              rows[i][j] = static_cast<int>(p[t + i * t + j]);
          CHECK(is_valid(TypedGame(sizes, rows)));
        }
      }
}

TEST_CASE("Big-M model naming and labels") {
  const auto s = build_big_m(4, 2, 2);
  CHECK(s.variables()[0].name == "n_1");
  CHECK(s.variables()[2].name == "m_1_1");
  CHECK(s.has_variable("x8_1_1"));
  std::set<std::string> labels;
  for (const auto& c : s.constraints())
    labels.insert(c.label.substr(0, 5));
  CHECK(labels.count("ilp01"));
  CHECK_THROWS_AS(build_big_m(4, 1, 1), InvalidInput);
  CHECK_THROWS_AS(build_big_m(3, 4, 2), InvalidInput);
}

TEST_CASE("serialization is deterministic and keeps integers as strings") {
  const auto a = build_compact_t2(7, 2).to_json();
  const auto b = build_compact_t2(7, 2).to_json();
  CHECK(a.dump() == b.dump());
  CHECK(build_compact_t2(7, 2).to_lp() == build_compact_t2(7, 2).to_lp());
  const std::string text = a.dump();
  CHECK(text.find("\"7\"") != std::string::npos);
}

TEST_CASE("merging terms and the point limit") {
  RationalLinearSystem s;
  s.add_variable("x", 0, 9);
  s.add_variable("y", 0, 9);
  s.add_constraint({{"x", 1}, {"y", 1}, {"x", 1}}, Relation::LessEq, 9);
  REQUIRE(s.constraints()[0].terms.size() == 2);
  CHECK(s.constraints()[0].terms[0].coefficient == 2);
  CHECK(count_lattice_points(s) == brute_count(s));
  CHECK(count_lattice_points(s, {true, 7}) == 7);
}

TEST_CASE("unbounded variables are rejected by name") {
  RationalLinearSystem s;
  s.add_variable("free", 0, std::nullopt);
  try {
    count_lattice_points(s);
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("free") != std::string::npos);
  }
  RationalLinearSystem bounded_by_constraint;
  bounded_by_constraint.add_variable("x", 0, std::nullopt);
  bounded_by_constraint.add_constraint({{"x", 1}}, Relation::LessEq, 4);
  CHECK(count_lattice_points(bounded_by_constraint) == 5);
  CHECK_THROWS_AS(count_lattice_points(bounded_by_constraint, {false, std::nullopt}), InvalidInput);
}

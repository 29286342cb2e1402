#include <doctest.h>

#include "csg/enumeration.hpp"
#include "csg/errors.hpp"
#include "csg/formula.hpp"
#include "csg/quasi_polynomial.hpp"

using namespace csg;

namespace {

BigInt fib_loop(long n) {
  BigInt a = 0, b = 1;
  for (long i = 0; i < n; ++i) {
    BigInt c = a + b;
    a = b;
    b = c;
  }
  return a;
}

// f(k) = 4/(k+2) * C(2k-1, k-2), f(1) = 0.
Rational dyck_reference(long k) {
  if (k < 2)
    return 0;
  return Rational(4 * binomial(2 * k - 1, k - 2)) / (k + 2);
}

BigInt cs(int n, int t, int r) { return t > n ? BigInt(0) : count_typed(n, t, r); }

}  // namespace

TEST_CASE("embedded quasi-polynomial data matches its recorded checksum") {
  CHECK(quasi_polynomial_data_checksum() == quasi_polynomial_recorded_checksum());
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("catalog spot values") {
  CHECK(catalog_eval("cs_32", {4}) == 5);
  CHECK(catalog_eval("cs_32", {5}) == 38);
  CHECK(catalog_eval("cs_32", {6}) == 172);
  CHECK(catalog_eval("cs_33", {5}) == 6);
  CHECK(catalog_eval("cs_32", {3}) == 0);
  CHECK(catalog_eval("cs_2_total", {10}) == 839);
  CHECK(catalog_eval("sum_t_r2", {4}) == 10);
  CHECK(catalog_eval("cs_21", {4}) == 10);
  CHECK(catalog_eval("sum_t_r1", {5}) == 31);
}

TEST_CASE("out-of-range and unknown ids are rejected") {
  CHECK_THROWS_AS(catalog_eval("nope", {3}), InvalidInput);
  CHECK_THROWS_AS(catalog_eval("cs_32", {0}), InvalidInput);
  CHECK_THROWS_AS(catalog_eval("cs_2r", {5, 0, 1}), InvalidInput);
}

TEST_CASE("stored quasi-polynomials agree with enumeration for n <= 11") {
  for (const auto& id : quasi_polynomial_ids()) {
    const auto& info = formula_info(id);
    for (int n = 2; n <= 11; ++n) {
      CAPTURE(id);
      CAPTURE(n);
      const BigInt expected = cs(n, *info.types, *info.rows);
      BigInt got = -1;
      CHECK_NOTHROW(got = catalog_eval(id, {n}));
      CHECK(got == expected);
    }
  }
}

TEST_CASE("every catalog entry is integral on its validity range, n <= 200") {
  for (const auto& info : formula_catalog()) {
    CAPTURE(info.id);
    const bool has_t = std::find(info.parameters.begin(), info.parameters.end(), "t") != info.parameters.end();
    const bool has_r = std::find(info.parameters.begin(), info.parameters.end(), "r") != info.parameters.end();
    for (long n = info.min_n; n <= 200; ++n)
      for (long t = has_t ? info.min_t : 0; t <= (has_t ? std::min(n, 6L) : 0); ++t)
        for (long r = has_r ? info.min_r : 0; r <= (has_r ? 6 : 0); ++r) {
          CAPTURE(n);
          CHECK_NOTHROW(catalog_eval(info.id, {n, t, r}));
        }
  }
}

TEST_CASE("two-type closed forms agree with enumeration") {
  for (int n = 1; n <= 14; ++n) {
    CHECK(catalog_eval("cs_21", {n}) == cs(n, 2, 1));
    CHECK(catalog_eval("cs_2_total", {n}) == (n >= 2 ? count_typed(n, 2, std::nullopt) : BigInt(0)));
    for (int r = 2; r <= 5; ++r)
      CHECK(catalog_eval("cs_2r", {n, 0, r}) == cs(n, 2, r));
    if (n <= 10)
      for (int t = 1; t <= n; ++t)
        CHECK(catalog_eval("cs_t1", {n, t}) == count_typed(n, t, 1));
  }
}

TEST_CASE("cs(n,2) is the sum of its r-parts, n <= 60") {
  for (int n = 1; n <= 60; ++n) {
    BigInt sum = catalog_eval("cs_21", {n});
    for (int r = 2; 3 * r - 3 <= n; ++r)
      sum += catalog_eval("cs_2r", {n, 0, r});
    CHECK(sum == catalog_eval("cs_2_total", {n}));
  }
}

TEST_CASE("fibonacci") {
  for (long n = 0; n <= 120; ++n) {
    CHECK(fibonacci(n) == fib_loop(n));
    CHECK(catalog_eval("fib", {n}) == fib_loop(n));
  }
}

TEST_CASE("f(k) from three methods and the reference closed form") {
  for (long k = 1; k <= 50; ++k) {
    const BigInt closed = dyck_f(k, DyckMethod::Closed);
    CHECK(Rational(closed) == dyck_reference(k));
    CHECK(dyck_f(k, DyckMethod::Sum) == closed);
    if (k <= 14)
      CHECK(dyck_f(k, DyckMethod::Brute) == closed);
  }
  CHECK(dyck_f(4, DyckMethod::Closed) == 14);
  CHECK_THROWS_AS(dyck_f(15, DyckMethod::Brute), ResourceLimit);
}

TEST_CASE("sum over t of two-row counts, n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    BigInt sum = 0;
    for (int t = 1; t <= n; ++t)
      sum += count_typed(n, t, 2);
    CHECK(catalog_eval("sum_t_r2", {n}) == sum);
  }
}

TEST_CASE("antichain-size formulas against brute force") {
  for (int n = 0; n <= 4; ++n)
    for (int k = 0; k <= 3; ++k)
      CHECK(mb_formula(n, k) == mb_brute_force(n, k));
  // {1}: {}, {1} -> one 2-antichain is impossible; n = 2: {1},{2} is the only one.
  CHECK(mb_formula(1, 2) == 0);
  CHECK(mb_formula(2, 2) == 1);
  CHECK(mb_formula(2, 1) == 4);
}

TEST_CASE("power series arithmetic") {
  const PowerSeries one_minus_x(8, {1, -1});
  const PowerSeries geometric = one_minus_x.inverse();
  for (int i = 0; i <= 8; ++i)
    CHECK(geometric[i] == 1);
  CHECK(one_minus_x * geometric == PowerSeries::monomial(8, 0));
  const PowerSeries sq = geometric.pow(2);
  for (int i = 0; i <= 8; ++i)
    CHECK(sq[i] == i + 1);
  CHECK_THROWS_AS(PowerSeries(4, {2, 1}).inverse(), InvalidInput);
}

TEST_CASE("generating-function coefficients equal the closed forms, n <= 60") {
  const auto r1 = generating_function(SeriesExpr::R1, 60);
  const auto total = generating_function(SeriesExpr::Cs2Total, 60);
  for (int n = 1; n <= 60; ++n) {
    CHECK(r1[n] == catalog_eval("cs_21", {n}));
    CHECK(total[n] == catalog_eval("cs_2_total", {n}));
    CHECK(series_coefficient(SeriesExpr::Cs2Total, n) == total[n]);
  }
  for (int r = 2; r <= 10; ++r) {
    const auto g = generating_function(SeriesExpr::RGe2, 60, r);
    for (int n = 1; n <= 60; ++n)
      CHECK(g[n] == catalog_eval("cs_2r", {n, 0, r}));
  }
}

TEST_CASE("periodic numbers select entry n mod q") {
  const PeriodicNumber p{Rational(1), Rational(5, 8)};
  CHECK(p(0) == 1);
  CHECK(p(1) == Rational(5, 8));
  CHECK(p(6) == 1);
  CHECK(PeriodicNumber{Rational(3), Rational(3)}.minimal().period() == 1);
  const QuasiPolynomial demo = parse_quasi_polynomial("35/8*n^2 + [17/4,4]_n*n + [1,5/8]_n");
  CHECK(demo(1) == 9);
  CHECK(demo(2) == 27);
  CHECK(demo(0) == 1);
  CHECK(demo.period() == 2);
  CHECK(demo.degree() == 2);
}

TEST_CASE("quasi-polynomial text forms") {
  for (const auto& id : quasi_polynomial_ids()) {
    const QuasiPolynomial& q = catalog_quasi_polynomial(id);
    CHECK(parse_quasi_polynomial(q.to_string()) == q);
    CHECK(q.to_latex().find("\\left[") != std::string::npos);
  }
  const QuasiPolynomial demo = parse_quasi_polynomial("35/8*n^2 + [17/4,4]_n*n + [1,5/8]_n");
  CHECK(demo.to_string() == "35/8*n^2 + [17/4,4]_n*n + [1,5/8]_n");
  CHECK(demo.to_latex() ==
        "\\frac{35}{8}n^{2} + \\left[\\frac{17}{4},4\\right]_n\\cdot n + "
        "\\left[1,\\frac{5}{8}\\right]_n");
  CHECK_THROWS_AS(parse_quasi_polynomial("3*n^"), InvalidInput);
}

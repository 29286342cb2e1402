#include "csg/verify.hpp"

#include <chrono>
#include <map>
#include <sstream>

#include "csg/ehrhart.hpp"
#include "csg/enumeration.hpp"
#include "csg/errors.hpp"
#include "csg/formula.hpp"
#include "csg/polytope.hpp"
#include "csg/subcases.hpp"

namespace csg {

namespace {

std::string show(const BigInt& v) { return to_string(v); }
std::string show(int v) { return std::to_string(v); }
std::string show(std::size_t v) { return std::to_string(v); }
std::string show(const QuasiPolynomial& q) { return q.to_string(); }

class Checker {
 public:
  explicit Checker(CheckReport& report) : report_(report) {}

  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    ++report_.checks;
    if (!(got == want))
      fail(what + ": got " + show(got) + ", expected " + show(want));
  }

  void fail(const std::string& message) {
    report_.passed = false;
    if (report_.mismatches.size() < 50)
      report_.mismatches.push_back(message);
  }

  void count() { ++report_.checks; }

 private:
  CheckReport& report_;
};

EnumerationOptions enum_options(const VerifyOptions& o) {
  EnumerationOptions e;
  e.jobs = o.jobs;
  return e;
}

BigInt cs(int n, int t, std::optional<int> r, const VerifyOptions& o) {
  if (t > n)
    return 0;
  return count_typed(n, t, r, enum_options(o));
}

std::string args(int n, int t, std::optional<int> r = {}) {
  std::string s = "cs(" + std::to_string(n) + "," + std::to_string(t);
  if (r)
    s += "," + std::to_string(*r);
  return s + ")";
}

void game_totals(Checker& c, const VerifyOptions& o) {
  const long expected[] = {1, 3, 8, 25, 117, 1171, 44313, 16175188};
  for (int n = 1; n <= 8; ++n)
    c.equal(count_all_games(n, enum_options(o)), BigInt(expected[n - 1]), "cs(" + std::to_string(n) + ")");
}

void engines(Checker& c, const VerifyOptions& o, int max_n) {
  for (int n = 1; n <= max_n; ++n) {
    const Tabulation typed = tabulate_typed(n, enum_options(o));
    c.equal(typed.total(), count_all_games(n, enum_options(o)),
            "typed total vs antichain count, n = " + std::to_string(n));
  }
}

void fibonacci_identity(Checker& c, const VerifyOptions& o) {
  for (int n = 1; n <= 25; ++n)
    c.equal(cs(n, 2, std::nullopt, o), catalog_eval("cs_2_total", {n}), args(n, 2));
}

void single_row(Checker& c, const VerifyOptions& o) {
  for (int n = 1; n <= 12; ++n) {
    BigInt sum = 0;
    for (int t = 1; t <= n; ++t) {
      const BigInt v = cs(n, t, 1, o);
      sum += v;
      if (t >= 2)
        c.equal(v, binomial(n + 1, 2 * t - 1), args(n, t, 1) + " vs C(n+1,2t-1)");
    }
    c.equal(sum, pow2(n) - 1, "sum_t " + args(n, 0, 1).replace(5, 2, "t") + " vs 2^n-1");
  }
}

void quasi_polynomials(Checker& c, const VerifyOptions& o) {
  for (const auto& id : quasi_polynomial_ids()) {
    const auto& info = formula_info(id);
    for (int n = 2; n <= 11; ++n) {
      const BigInt enumerated = cs(n, *info.types, *info.rows, o);
      try {
        c.equal(catalog_eval(id, {n}), enumerated, id + " at n = " + std::to_string(n));
      } catch (const FormulaDefect& e) {
        c.count();
        c.fail(std::string(e.what()) + "; enumeration gives " + show(enumerated));
      }
    }
  }
  c.equal(cs(4, 3, 2, o), BigInt(5), args(4, 3, 2));
  c.equal(cs(5, 3, 2, o), BigInt(38), args(5, 3, 2));
  c.equal(cs(6, 3, 2, o), BigInt(172), args(6, 3, 2));
  c.equal(cs(5, 3, 3, o), BigInt(6), args(5, 3, 3));
}

void class_totals(Checker& c, const VerifyOptions& o) {
  const long three[] = {0, 0, 0, 6, 50, 262, 1114, 4278, 15769};
  const long four[] = {0, 0, 0, 0, 24, 426, 4769, 45483, 431440};
  for (int n = 1; n <= 9; ++n) {
    c.equal(cs(n, 3, std::nullopt, o), BigInt(three[n - 1]), args(n, 3));
    c.equal(cs(n, 4, std::nullopt, o), BigInt(four[n - 1]), args(n, 4));
  }
}

void max_rows(Checker& c, const VerifyOptions& o) {
  const long expected[] = {1, 1, 2, 2, 3, 5, 8, 14, 23, 40, 70, 124, 221, 397, 722};
  for (int n = 1; n <= 15; ++n)
    c.equal(max_shift_minimal(n), BigInt(expected[n - 1]), "maxr(" + std::to_string(n) + ")");
  for (int n = 1; n <= 7; ++n)
    c.equal(BigInt(tabulate_games(n, enum_options(o)).max_rows()), max_shift_minimal(n),
            "largest realized r, n = " + std::to_string(n));
}

void ilp(Checker& c, const VerifyOptions& o) {
  for (int n = 1; n <= 5; ++n)
    for (int t = 1; t <= n; ++t)
      for (int r = 1; r <= static_cast<int>(max_shift_minimal(n)); ++r) {
        if (t + r <= 2)
          continue;
        c.equal(count_lattice_points(build_big_m(n, t, r)), cs(n, t, r, o), "Big-M " + args(n, t, r));
      }
  for (int n = 2; n <= 12; ++n)
    for (int r = 1; r <= 4; ++r)
      c.equal(count_lattice_points(build_compact_t2(n, r)), cs(n, 2, r, o), "compact " + args(n, 2, r));
}

void subcase_counts(Checker& c, const VerifyOptions& o, const std::vector<std::array<int, 3>>& cases) {
  SubcaseOptions so;
  so.jobs = o.jobs;
  for (const auto& [t, r, want] : cases)
    c.equal(enumerate_subcases(t, r, so).size(), static_cast<std::size_t>(want),
            "sub-cases (" + std::to_string(t) + "," + std::to_string(r) + ")");
}

void partition(Checker& c, const VerifyOptions& o) {
  SubcaseOptions so;
  so.jobs = o.jobs;
  for (auto [t, r] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{4, 2}}) {
    const auto tuples = enumerate_subcases(t, r, so);
    for (int n = t; n <= 9; ++n) {
      std::map<SubcaseTuple, BigInt> buckets;
      enumerate_typed(n, t, r, [&](const TypedGame& g) { buckets[classify_game(g)] += 1; });
      BigInt total = 0;
      for (const auto& tp : tuples) {
        const BigInt points = count_lattice_points(subcase_system(tp, n));
        total += points;
        auto it = buckets.find(tp);
        c.equal(points, it == buckets.end() ? BigInt(0) : it->second,
                "tuple " + tp.to_string() + " at n = " + std::to_string(n));
        if (it != buckets.end())
          buckets.erase(it);
      }
      c.equal(total, cs(n, t, r, o), "sum over tuples, " + args(n, t, r));
      c.equal(buckets.size(), std::size_t{0}, "games outside every tuple, " + args(n, t, r));
    }
  }
}

void fitting(Checker& c, const VerifyOptions& o) {
  SampleSet demo;
  for (long n = 1; n <= 6; ++n)
    demo.add(n, demo_polytope_count(n), Provenance::Lattice);
  c.equal(fit_quasi_polynomial(demo, 2, 2), parse_quasi_polynomial("35/8*n^2 + [17/4,4]_n*n + [1,5/8]_n"),
          "demo polytope fit");
  SampleOptions so;
  so.jobs = o.jobs;
  const SampleSet samples = sample_counts(3, 2, 6, 23, so);
  c.equal(fit_quasi_polynomial(samples, 8, 2), catalog_quasi_polynomial("cs_32"), "cs(n,3,2) fit");
}

void two_rows(Checker& c, const VerifyOptions& o) {
  for (int n = 1; n <= 8; ++n) {
    BigInt sum = 0;
    for (int t = 1; t <= n; ++t)
      sum += cs(n, t, 2, o);
    c.equal(catalog_eval("sum_t_r2", {n}), sum, "sum_t cs(" + std::to_string(n) + ",t,2)");
  }
  for (long k = 1; k <= 14; ++k) {
    const BigInt closed = dyck_f(k, DyckMethod::Closed);
    c.equal(dyck_f(k, DyckMethod::Sum), closed, "f(" + std::to_string(k) + ") sum form");
    c.equal(dyck_f(k, DyckMethod::Brute), closed, "f(" + std::to_string(k) + ") brute force");
  }
  for (long k = 15; k <= 50; ++k)
    c.equal(dyck_f(k, DyckMethod::Sum), dyck_f(k, DyckMethod::Closed), "f(" + std::to_string(k) + ") sum form");
}

void series(Checker& c, const VerifyOptions&) {
  const int order = 60;
  const PowerSeries r1 = generating_function(SeriesExpr::R1, order);
  const PowerSeries total = generating_function(SeriesExpr::Cs2Total, order);
  for (int n = 1; n <= order; ++n) {
    c.equal(r1[n], catalog_eval("cs_21", {n}), "x^" + std::to_string(n) + " of the r = 1 series");
    c.equal(total[n], catalog_eval("cs_2_total", {n}), "x^" + std::to_string(n) + " of the cs(n,2) series");
  }
  for (int r = 2; r <= 10; ++r) {
    const PowerSeries g = generating_function(SeriesExpr::RGe2, order, r);
    for (int n = 1; n <= order; ++n)
      c.equal(g[n], catalog_eval("cs_2r", {n, 0, r}),
              "x^" + std::to_string(n) + " of the r = " + std::to_string(r) + " series");
  }
}

template <class F>
std::function<CheckReport(const VerifyOptions&)> wrap(F f) {
  return [f](const VerifyOptions& o) {
    CheckReport report;
    Checker c(report);
    f(c, o);
    return report;
  };
}

std::vector<Criterion> build() {
  std::vector<Criterion> v;
  v.push_back({1, "game_totals", "cs(n) for n = 1..8", false, wrap(game_totals)});
  v.push_back({2, "engines", "typed engine total equals antichain count, n <= 7", false,
               wrap([](Checker& c, const VerifyOptions& o) { engines(c, o, 7); })});
  v.push_back({3, "fibonacci", "cs(n,2) = Fib(n+6) - (n^2+4n+8), n <= 25", false, wrap(fibonacci_identity)});
  v.push_back({4, "single_row", "cs(n,t,1) = C(n+1,2t-1) and sum_t cs(n,t,1) = 2^n-1, n <= 12", false,
               wrap(single_row)});
  v.push_back({5, "quasi_polynomials", "stored quasi-polynomials match enumeration, n <= 11", false, wrap(quasi_polynomials)});
  v.push_back({6, "class_totals", "cs(n,3) and cs(n,4), n <= 9", false, wrap(class_totals)});
  v.push_back({7, "max_rows", "maximum number of shift-minimal winning coalitions, n <= 15", false, wrap(max_rows)});
  v.push_back({8, "ilp", "Big-M and compact lattice counts equal typed counts", false, wrap(ilp)});
  v.push_back({9, "subcase_counts", "sub-case tuple counts", false, wrap([](Checker& c, const VerifyOptions& o) {
                 subcase_counts(c, o, {{3, 2, 9}, {3, 3, 46}, {3, 4, 254}, {4, 2, 49}, {5, 2, 217}});
               })});
  v.push_back({10, "partition", "sub-case lattice counts partition cs(n,t,r), n <= 9", false, wrap(partition)});
  v.push_back({11, "fitting", "quasi-polynomials recovered by interpolation", false, wrap(fitting)});
  v.push_back({12, "two_rows", "sum_t cs(n,t,2) double sum and f(k)", false, wrap(two_rows)});
  v.push_back({13, "series", "generating-function coefficients, n <= 60, r <= 10", false, wrap(series)});
  v.push_back({101, "subcase_counts_slow", "sub-case tuple count (4,3) = 1071", true,
               wrap([](Checker& c, const VerifyOptions& o) { subcase_counts(c, o, {{4, 3, 1071}}); })});
  v.push_back({102, "engines_slow", "typed engine total equals antichain count, n = 8", true,
               wrap([](Checker& c, const VerifyOptions& o) {
                 const Tabulation typed = tabulate_typed(8, enum_options(o));
                 c.equal(typed.total(), count_all_games(8, enum_options(o)), "typed total, n = 8");
                 c.equal(typed == tabulate_games(8, enum_options(o)), true, "per (t, r) tabulation, n = 8");
               })});
  return v;
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> all = build();
  return all;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names{"all", "slow", "everything"};
  for (const auto& c : acceptance_criteria())
    names.push_back(c.name);
  return names;
}

std::vector<const Criterion*> suite(const std::string& name) {
  std::vector<const Criterion*> out;
  for (const auto& c : acceptance_criteria()) {
    const bool take = name == "everything" || (name == "all" && !c.slow) || (name == "slow" && c.slow) ||
                      name == c.name;
    if (take)
      out.push_back(&c);
  }
  if (out.empty())
    throw InvalidInput("unknown suite '" + name + "'");
  return out;
}

CheckReport run_criterion(const Criterion& criterion, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  try {
    report = criterion.run(options);
  } catch (const std::exception& e) {
    report.passed = false;
    report.mismatches.push_back(std::string("error: ") + e.what());
  }
  report.id = criterion.id;
  report.name = criterion.name;
  report.summary = criterion.summary;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_line(const CheckReport& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS" : "FAIL") << " " << (r.id < 10 ? " " : "") << r.id << " " << r.name << ": "
      << r.summary << " (" << r.checks << " checks, " << r.mismatches.size() << " mismatches, ";
  out.setf(std::ios::fixed);
  out.precision(2);
  out << r.seconds << " s)";
  return out.str();
}

}  // namespace csg

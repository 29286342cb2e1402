#include "csg/ehrhart.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "csg/enumeration.hpp"
#include "csg/errors.hpp"

namespace csg {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Enumeration: return "enumeration";
    case Provenance::Lattice: return "lattice";
    case Provenance::Formula: return "formula";
  }
  return "?";
}

void SampleSet::add(long n, BigInt count, Provenance provenance) {
  if (count < 0)
    throw InvalidInput("sample count at n = " + std::to_string(n) + " is negative");
  for (const auto& s : points_)
    if (s.n == n)
      throw InvalidInput("sample n = " + std::to_string(n) + " given twice");
  points_.push_back({n, std::move(count), provenance});
}

namespace {

std::size_t bit_size(const Rational& v) {
  const BigInt num = abs(boost::multiprecision::numerator(v));
  const BigInt den = boost::multiprecision::denominator(v);
  return (num == 0 ? 0 : msb(num)) + msb(den);
}

}  // namespace

std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  if (a.size() != n)
    throw InvalidInput("system is not square");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t row = col; row < n; ++row)
      if (a[row][col] != 0 && (pivot == n || bit_size(a[row][col]) < bit_size(a[pivot][col])))
        pivot = row;
    if (pivot == n)
      throw InvalidInput("singular system");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      if (a[row][col] == 0)
        continue;
      const Rational f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k)
        a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k)
      acc -= a[i][k] * x[k];
    x[i] = acc / a[i][i];
  }
  return x;
}

QuasiPolynomial fit_quasi_polynomial(const SampleSet& samples, int degree, int period) {
  if (degree < 0)
    throw InvalidInput("degree must be >= 0");
  if (period < 1)
    throw InvalidInput("period must be >= 1");
  std::vector<std::vector<const Sample*>> classes(period);
  for (const auto& s : samples.points())
    classes[((s.n % period) + period) % period].push_back(&s);
  // coefficient[power][residue]
  std::vector<std::vector<Rational>> coeff(degree + 1, std::vector<Rational>(period));
  for (int rho = 0; rho < period; ++rho) {
    auto& cls = classes[rho];
    if (static_cast<int>(cls.size()) < degree + 1)
      throw InvalidInput("residue class " + std::to_string(rho) + " mod " + std::to_string(period) +
                         " has " + std::to_string(cls.size()) + " samples; degree " +
                         std::to_string(degree) + " needs " + std::to_string(degree + 1));
    std::sort(cls.begin(), cls.end(), [](const Sample* x, const Sample* y) { return x->n < y->n; });
    std::vector<std::vector<Rational>> m(degree + 1, std::vector<Rational>(degree + 1));
    std::vector<Rational> rhs(degree + 1);
    for (int i = 0; i <= degree; ++i) {
      Rational p = 1;
      for (int k = 0; k <= degree; ++k) {
        m[i][k] = p;
        p *= cls[i]->n;
      }
      rhs[i] = Rational(cls[i]->count);
    }
    const auto x = solve_exact(std::move(m), std::move(rhs));
    for (int k = 0; k <= degree; ++k)
      coeff[k][rho] = x[k];
    for (std::size_t i = degree + 1; i < cls.size(); ++i) {
      Rational v = 0;
      for (int k = degree; k >= 0; --k)
        v = v * cls[i]->n + x[k];
      if (v != Rational(cls[i]->count))
        throw FitMismatch("model class too small: degree " + std::to_string(degree) + ", period " +
                              std::to_string(period) + " fails at n = " + std::to_string(cls[i]->n),
                          cls[i]->n);
    }
  }
  std::vector<PeriodicNumber> from_highest;
  for (int k = degree; k >= 0; --k) {
    std::vector<Rational> entries(period);
    for (int e = 0; e < period; ++e) {
      // Entry e serves the n with (n mod q) + offset = e.
      const int rho = ((e - kPeriodicIndexOffset) % period + period) % period;
      entries[e] = coeff[k][rho];
    }
    from_highest.push_back(PeriodicNumber(std::move(entries)).minimal());
  }
  return QuasiPolynomial(std::move(from_highest));
}

std::optional<PeriodFit> find_period(const SampleSet& samples, int degree, int max_period) {
  for (int q = 1; q <= max_period; ++q) {
    try {
      return PeriodFit{q, fit_quasi_polynomial(samples, degree, q)};
    } catch (const FitMismatch&) {
    }
  }
  return std::nullopt;
}

RationalLinearSystem demo_polytope(long n) {
  if (n < 0)
    throw InvalidInput("dilation factor must be >= 0");
  RationalLinearSystem s;
  const int x1 = s.add_variable("x_1", 0, std::nullopt);
  const int x2 = s.add_variable("x_2", 0, std::nullopt);
  s.add_constraint({{x1, 1}, {x2, 1}}, Relation::LessEq, 3 * n, "sum");
  s.add_constraint({{x1, 2}}, Relation::LessEq, 5 * n, "first");
  return s;
}

BigInt demo_polytope_count(long n) { return count_lattice_points(demo_polytope(n)); }

double enumeration_cost(int n, int t, int r) {
  double total = 0;
  for (const auto& sizes : compositions(n, t)) {
    double profiles = 1;
    for (int s : sizes)
      profiles *= s + 1;
    total += r == 1 ? profiles : profiles * profiles;
  }
  return total;
}

SampleSet sample_counts(int t, int r, long from, long to, const SampleOptions& options) {
  if (from > to)
    throw InvalidInput("empty sample range");
  if (from < 1)
    throw InvalidInput("sample range must start at n >= 1");
  double cost = 0;
  for (long n = std::max<long>(from, t); n <= to; ++n)
    cost += enumeration_cost(static_cast<int>(n), t, r);
  if (cost > options.max_cost)
    throw ResourceLimit("sampling cs(n," + std::to_string(t) + "," + std::to_string(r) + ") for n = " +
                        std::to_string(from) + ".." + std::to_string(to) + " is estimated at " +
                        std::to_string(static_cast<long long>(cost)) + " profile pairs, above the ceiling " +
                        std::to_string(static_cast<long long>(options.max_cost)));
  static std::mutex mutex;
  static std::map<std::tuple<int, int, long>, BigInt> memo;
  SampleSet out;
  for (long n = from; n <= to; ++n) {
    BigInt value;
    {
      std::lock_guard lock(mutex);
      auto it = memo.find({t, r, n});
      if (it != memo.end())
        value = it->second;
      else
        value = -1;
    }
    if (value < 0) {
      EnumerationOptions eo;
      eo.jobs = options.jobs;
      value = n < t ? BigInt(0) : count_typed(static_cast<int>(n), t, r, eo);
      std::lock_guard lock(mutex);
      memo[{t, r, n}] = value;
    }
    out.add(n, value, Provenance::Enumeration);
  }
  return out;
}

}  // namespace csg

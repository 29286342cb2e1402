#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csg/numeric.hpp"
#include "csg/polytope.hpp"
#include "csg/quasi_polynomial.hpp"

namespace csg {

enum class Provenance { Enumeration, Lattice, Formula };

std::string to_string(Provenance p);

struct Sample {
  long n;
  BigInt count;
  Provenance provenance;
};

class SampleSet {
 public:
  /// Rejects a repeated n or a negative count.
  void add(long n, BigInt count, Provenance provenance);
  const std::vector<Sample>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Sample> points_;
};

/// Raised when the samples are not reproduced by any quasi-polynomial of the
/// requested degree and period.
class FitMismatch : public std::runtime_error {
 public:
  FitMismatch(const std::string& what, long n) : std::runtime_error(what), n_(n) {}
  long failing_n() const { return n_; }

 private:
  long n_;
};

/// Interpolates each residue class mod `period` with a degree-`degree`
/// polynomial using its d+1 smallest samples; the remaining samples must be
/// reproduced exactly. Periodic coefficients are reported with their
/// shortest period.
QuasiPolynomial fit_quasi_polynomial(const SampleSet& samples, int degree, int period);

struct PeriodFit {
  int period;
  QuasiPolynomial polynomial;
};

/// Smallest period in 1..max_period for which the fit succeeds, if any.
std::optional<PeriodFit> find_period(const SampleSet& samples, int degree, int max_period);

/// Exact solution of a square rational system; throws InvalidInput if singular.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> matrix, std::vector<Rational> rhs);

/// nP for P = {x1 + x2 <= 3, 2 x1 <= 5, x >= 0}.
RationalLinearSystem demo_polytope(long n);
BigInt demo_polytope_count(long n);

struct SampleOptions {
  int jobs = 1;
  /// Upper limit on the estimated search work (profile pairs summed over n).
  double max_cost = 5e10;
};

/// Rough work estimate of enumerating the (n, t, r) games.
double enumeration_cost(int n, int t, int r);

/// cs(n, t, r) for n in [from, to] from the typed engine, memoized in process.
SampleSet sample_counts(int t, int r, long from, long to, const SampleOptions& options = {});

}  // namespace csg

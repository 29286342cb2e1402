#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "csg/numeric.hpp"
#include "csg/quasi_polynomial.hpp"

namespace csg {

/// Raised when a stored formula produces a non-integral count.
class FormulaDefect : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FormulaArgs {
  long n = 0;
  long t = 0;
  long r = 0;
};

struct FormulaInfo {
  std::string id;
  std::string expression;
  std::vector<std::string> parameters;  // subset of {"n", "t", "r"}
  long min_n = 0;
  long min_t = 0;
  long min_r = 0;
  std::optional<long> zero_max;  // count is 0 for min_n <= n <= zero_max
  std::optional<int> types;       // (t, r) of the counted class, if fixed
  std::optional<int> rows;

  std::string range() const;
};

const std::vector<FormulaInfo>& formula_catalog();
const FormulaInfo& formula_info(std::string_view id);

/// Throws InvalidInput for an unknown id or out-of-range arguments and
/// FormulaDefect for a non-integral value.
BigInt catalog_eval(std::string_view id, const FormulaArgs& args);

/// The six stored cs(n,t,r) quasi-polynomials, ids cs_32 ... cs_52.
std::vector<std::string> quasi_polynomial_ids();
const QuasiPolynomial& catalog_quasi_polynomial(std::string_view id);

/// FNV-1a 64 of the embedded data body, and the value recorded in the file.
std::uint64_t quasi_polynomial_data_checksum();
std::uint64_t quasi_polynomial_recorded_checksum();
std::string_view quasi_polynomial_data();
std::uint64_t fnv1a64(std::string_view bytes);

enum class DyckMethod { Closed, Sum, Brute };

/// f(k): pairs u', v' in {0,1}^k with prefix sums of u' dominating those of v',
/// equal totals, and u'_k = 0, v'_k = 1. Brute force is limited to k <= 14.
BigInt dyck_f(long k, DyckMethod method);

/// Antichains of subsets of {1..n} with exactly k members: closed forms for
/// k <= 3 and brute force over the subset lattice for n <= 4.
BigInt mb_formula(long n, int k);
BigInt mb_brute_force(int n, int k);

/// Exact truncated power series: coefficients of x^0 .. x^order.
class PowerSeries {
 public:
  explicit PowerSeries(int order);
  PowerSeries(int order, std::vector<BigInt> coefficients);
  static PowerSeries monomial(int order, int power, BigInt coefficient = 1);

  int order() const { return order_; }
  const BigInt& operator[](int i) const;
  const std::vector<BigInt>& coefficients() const { return coefficients_; }

  PowerSeries operator+(const PowerSeries& other) const;
  PowerSeries operator-(const PowerSeries& other) const;
  PowerSeries operator*(const PowerSeries& other) const;
  /// Requires a constant term of +1 or -1.
  PowerSeries inverse() const;
  PowerSeries pow(int e) const;

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  int order_;
  std::vector<BigInt> coefficients_;
};

enum class SeriesExpr {
  R1,        // x^2 / (1-x)^4
  RGe2,      // x^(3r-3) / ((1-x)^(r+3) (1-x^2)^(r-1))
  Cs2Total,  // x^2 (1+x) / ((1-x)^3 (1-x-x^2))
};

inline constexpr int kDefaultTruncationOrder = 512;

PowerSeries generating_function(SeriesExpr expr, int order, long r = 0);
BigInt series_coefficient(SeriesExpr expr, long n, long r = 0,
                          int truncation_order = kDefaultTruncationOrder);

}  // namespace csg

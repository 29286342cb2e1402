#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "csg/numeric.hpp"

namespace csg {

/// Entry selected for argument n is entries[(n mod q) + kPeriodicIndexOffset],
/// 0-based. The printed convention "f(n) = f_i for n = i (mod q)" is off by one
/// against every worked example, so the shifted rule is used.
inline constexpr int kPeriodicIndexOffset = 0;

class PeriodicNumber {
 public:
  PeriodicNumber(Rational value = 0) : entries_{std::move(value)} {}
  explicit PeriodicNumber(std::vector<Rational> entries);
  PeriodicNumber(std::initializer_list<Rational> entries)
      : PeriodicNumber(std::vector<Rational>(entries)) {}

  int period() const { return static_cast<int>(entries_.size()); }
  const std::vector<Rational>& entries() const { return entries_; }
  Rational operator()(long n) const;

  bool is_zero() const;
  /// Same values with the shortest period.
  PeriodicNumber minimal() const;

  friend bool operator==(const PeriodicNumber&, const PeriodicNumber&) = default;

 private:
  std::vector<Rational> entries_;
};

/// sum_i a_i(n) n^i with periodic coefficients a_i.
class QuasiPolynomial {
 public:
  QuasiPolynomial() : coefficients_{PeriodicNumber{}} {}
  /// Coefficients from degree d down to 0. Leading zero coefficients are
  /// dropped; an all-zero input gives the zero polynomial of degree 0.
  explicit QuasiPolynomial(std::vector<PeriodicNumber> from_highest);

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  /// lcm of the coefficient periods.
  long period() const;
  const PeriodicNumber& coefficient(int power) const;
  const std::vector<PeriodicNumber>& from_highest() const { return coefficients_; }

  Rational operator()(long n) const;

  /// Plain form, e.g. "35/8*n^2 + [17/4,4]_n*n + [1,5/8]_n".
  std::string to_string() const;
  /// Bracket notation in LaTeX, e.g. "\frac{35}{8}n^{2} + \left[\frac{17}{4},4\right]_n\cdot n + ...".
  std::string to_latex() const;

  friend bool operator==(const QuasiPolynomial&, const QuasiPolynomial&) = default;

 private:
  std::vector<PeriodicNumber> coefficients_;
};

/// Parses the plain form produced by QuasiPolynomial::to_string.
QuasiPolynomial parse_quasi_polynomial(std::string_view text);
/// Parses "r" or "[r1,...,rq]" (an optional "_n" suffix is accepted).
PeriodicNumber parse_periodic(std::string_view text);

}  // namespace csg

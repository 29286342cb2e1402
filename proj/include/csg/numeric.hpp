#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace csg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Binomial coefficient C(n, k); zero whenever k < 0, n < 0 or k > n.
BigInt binomial(long n, long k);

/// Fibonacci numbers with F(0) = 0, F(1) = 1.
BigInt fibonacci(long n);

BigInt pow2(long e);
BigInt power(long base, long e);

/// Floor division that rounds toward negative infinity for either sign.
constexpr long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

std::string to_string(const BigInt& v);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& v);

BigInt parse_bigint(std::string_view text);
/// Accepts "p", "-p", "p/q"; the result is reduced.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& v) {
  return boost::multiprecision::denominator(v) == 1;
}

}  // namespace csg

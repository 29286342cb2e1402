#include "csg/numeric.hpp"

#include <cctype>

#include "csg/errors.hpp"

namespace csg {

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n)
    return 0;
  if (k > n - k)
    k = n - k;
  BigInt result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt fibonacci(long n) {
  if (n < 0)
    throw InvalidInput("fibonacci: negative index");
  BigInt a = 0, b = 1;
  for (long i = 0; i < n; ++i) {
    BigInt next = a + b;
    a = std::move(b);
    b = std::move(next);
  }
  return a;
}

BigInt pow2(long e) {
  if (e < 0)
    throw InvalidInput("pow2: negative exponent");
  BigInt r = 1;
  r <<= e;
  return r;
}

BigInt power(long base, long e) {
  if (e < 0)
    throw InvalidInput("power: negative exponent");
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(e));
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& v) {
  const BigInt& den = boost::multiprecision::denominator(v);
  if (den == 1)
    return boost::multiprecision::numerator(v).str();
  return boost::multiprecision::numerator(v).str() + "/" + den.str();
}

BigInt parse_bigint(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size())
    throw InvalidInput("expected an integer, got '" + std::string(text) + "'");
  BigInt v = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw InvalidInput("expected an integer, got '" + std::string(text) + "'");
    v = v * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-v) : v;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_bigint(text));
  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0)
    throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace csg

#include "csg/quasi_polynomial.hpp"

#include <cctype>
#include <numeric>

#include "csg/errors.hpp"

namespace csg {

PeriodicNumber::PeriodicNumber(std::vector<Rational> entries) : entries_(std::move(entries)) {
  if (entries_.empty())
    throw InvalidInput("periodic number needs at least one entry");
}

Rational PeriodicNumber::operator()(long n) const {
  const long q = period();
  const long idx = ((n % q) + q) % q + kPeriodicIndexOffset;
  return entries_[static_cast<std::size_t>(idx % q)];
}

bool PeriodicNumber::is_zero() const {
  for (const auto& e : entries_)
    if (e != 0)
      return false;
  return true;
}

PeriodicNumber PeriodicNumber::minimal() const {
  const int q = period();
  for (int p = 1; p < q; ++p) {
    if (q % p != 0)
      continue;
    bool ok = true;
    for (int i = p; i < q && ok; ++i)
      ok = entries_[i] == entries_[i - p];
    if (ok)
      return PeriodicNumber(std::vector<Rational>(entries_.begin(), entries_.begin() + p));
  }
  return *this;
}

QuasiPolynomial::QuasiPolynomial(std::vector<PeriodicNumber> from_highest) {
  std::size_t first = 0;
  while (first + 1 < from_highest.size() && from_highest[first].is_zero())
    ++first;
  if (from_highest.empty())
    coefficients_.emplace_back();
  else
    coefficients_.assign(from_highest.begin() + static_cast<std::ptrdiff_t>(first), from_highest.end());
}

long QuasiPolynomial::period() const {
  long q = 1;
  for (const auto& c : coefficients_)
    q = std::lcm(q, static_cast<long>(c.period()));
  return q;
}

const PeriodicNumber& QuasiPolynomial::coefficient(int power) const {
  if (power < 0 || power > degree())
    throw InvalidInput("no coefficient for n^" + std::to_string(power));
  return coefficients_[static_cast<std::size_t>(degree() - power)];
}

Rational QuasiPolynomial::operator()(long n) const {
  Rational acc = 0;
  for (const auto& c : coefficients_)
    acc = acc * n + c(n);
  return acc;
}

namespace {

std::string plain_power(int p) {
  if (p == 0)
    return "";
  if (p == 1)
    return "*n";
  return "*n^" + std::to_string(p);
}

std::string latex_rational(const Rational& v, bool with_sign) {
  BigInt num = boost::multiprecision::numerator(v);
  BigInt den = boost::multiprecision::denominator(v);
  std::string sign = num < 0 ? "-" : "";
  if (num < 0)
    num = -num;
  std::string body = den == 1 ? csg::to_string(num)
                              : "\\frac{" + csg::to_string(num) + "}{" + csg::to_string(den) + "}";
  return with_sign ? sign + body : body;
}

std::string latex_entry(const Rational& v) {
  if (v == 0)
    return "\\frac{0}{1}";
  return latex_rational(v, true);
}

}  // namespace

std::string QuasiPolynomial::to_string() const {
  std::string out;
  bool first = true;
  for (int i = 0; i <= degree(); ++i) {
    const int p = degree() - i;
    const auto& c = coefficients_[i];
    if (c.is_zero() && !(first && p == 0))
      continue;
    if (c.period() == 1) {
      const Rational& v = c.entries()[0];
      if (first)
        out += csg::to_string(v);
      else
        out += (v < 0 ? " - " : " + ") + csg::to_string(v < 0 ? Rational(-v) : v);
    } else {
      std::string entries;
      for (std::size_t k = 0; k < c.entries().size(); ++k)
        entries += (k ? "," : "") + csg::to_string(c.entries()[k]);
      out += (first ? "" : " + ") + std::string("[") + entries + "]_n";
    }
    out += plain_power(p);
    first = false;
  }
  return out;
}

std::string QuasiPolynomial::to_latex() const {
  std::string out;
  bool first = true;
  for (int i = 0; i <= degree(); ++i) {
    const int p = degree() - i;
    const auto& c = coefficients_[i];
    if (c.is_zero() && !(first && p == 0))
      continue;
    if (c.period() == 1) {
      const Rational& v = c.entries()[0];
      if (first)
        out += latex_rational(v, true);
      else
        out += (v < 0 ? " - " : " + ") + latex_rational(v, false);
      if (p == 1)
        out += "n";
      else if (p > 1)
        out += "n^{" + std::to_string(p) + "}";
    } else {
      std::string entries;
      for (std::size_t k = 0; k < c.entries().size(); ++k)
        entries += (k ? "," : "") + latex_entry(c.entries()[k]);
      out += (first ? "" : " + ") + std::string("\\left[") + entries + "\\right]_n";
      if (p == 1)
        out += "\\cdot n";
      else if (p > 1)
        out += "\\cdot n^{" + std::to_string(p) + "}";
    }
    first = false;
  }
  return out;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }
  bool done() {
    skip_space();
    return i_ >= s_.size();
  }
  bool accept(char c) {
    skip_space();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }
  char peek() {
    skip_space();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  Rational rational() {
    skip_space();
    std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+'))
      ++i_;
    while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/'))
      ++i_;
    if (start == i_)
      fail("expected a rational number");
    return parse_rational(s_.substr(start, i_ - start));
  }
  int integer() {
    skip_space();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
      ++i_;
    if (start == i_)
      fail("expected an exponent");
    return std::stoi(std::string(s_.substr(start, i_ - start)));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("quasi-polynomial parse error at offset " + std::to_string(i_) + ": " + what);
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

PeriodicNumber periodic_at(Cursor& cur) {
  if (!cur.accept('['))
    return PeriodicNumber(cur.rational());
  std::vector<Rational> entries{cur.rational()};
  while (cur.accept(','))
    entries.push_back(cur.rational());
  cur.expect(']');
  if (cur.accept('_'))
    cur.expect('n');
  return PeriodicNumber(std::move(entries));
}

}  // namespace

PeriodicNumber parse_periodic(std::string_view text) {
  Cursor cur(text);
  PeriodicNumber p = periodic_at(cur);
  if (!cur.done())
    cur.fail("trailing characters");
  return p;
}

QuasiPolynomial parse_quasi_polynomial(std::string_view text) {
  Cursor cur(text);
  std::vector<std::pair<int, PeriodicNumber>> terms;
  bool first = true;
  while (!cur.done()) {
    bool negate = false;
    if (!first) {
      if (cur.accept('-'))
        negate = true;
      else
        cur.expect('+');
    }
    PeriodicNumber coeff(Rational(1));
    int power = 0;
    if (cur.peek() == 'n') {
      cur.accept('n');
      power = 1;
      if (cur.accept('^'))
        power = cur.integer();
    } else {
      coeff = periodic_at(cur);
      if (cur.accept('*')) {
        cur.expect('n');
        power = 1;
        if (cur.accept('^'))
          power = cur.integer();
      }
    }
    if (negate) {
      std::vector<Rational> e = coeff.entries();
      for (auto& v : e)
        v = -v;
      coeff = PeriodicNumber(std::move(e));
    }
    terms.emplace_back(power, std::move(coeff));
    first = false;
  }
  if (terms.empty())
    cur.fail("empty input");
  int degree = 0;
  for (const auto& [p, c] : terms)
    degree = std::max(degree, p);
  std::vector<PeriodicNumber> coeffs(static_cast<std::size_t>(degree) + 1);
  std::vector<bool> seen(coeffs.size(), false);
  for (auto& [p, c] : terms) {
    if (seen[degree - p])
      cur.fail("repeated power n^" + std::to_string(p));
    seen[degree - p] = true;
    coeffs[degree - p] = std::move(c);
  }
  return QuasiPolynomial(std::move(coeffs));
}

}  // namespace csg

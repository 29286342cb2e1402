#include "csg/formula.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "csg/errors.hpp"

namespace csg {

extern const char kQuasiPolynomialText[];

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

struct StoredQuasi {
  FormulaInfo info;
  QuasiPolynomial qp;
};

struct QuasiData {
  std::string_view text;
  std::string_view body;
  std::uint64_t recorded = 0;
  std::vector<StoredQuasi> entries;
};

[[noreturn]] void data_error(int line, const std::string& what) {
  throw std::logic_error("quasi-polynomial data line " + std::to_string(line) + ": " + what);
}

QuasiData load_quasi_data() {
  QuasiData data;
  data.text = kQuasiPolynomialText;
  data.body = data.text;
  std::istringstream in{std::string(data.text)};
  std::string line;
  int lineno = 0;
  std::size_t offset = 0;
  std::optional<StoredQuasi> current;
  std::map<int, PeriodicNumber> terms;
  bool have_checksum = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream fields(line);
    std::string head;
    fields >> head;
    if (head == "qp") {
      if (current)
        data_error(lineno, "missing 'end'");
      StoredQuasi q;
      long t = 0, r = 0, zero = 0, min_n = 0;
      if (!(fields >> q.info.id >> t >> r >> zero >> min_n))
        data_error(lineno, "malformed header");
      q.info.parameters = {"n"};
      q.info.types = static_cast<int>(t);
      q.info.rows = static_cast<int>(r);
      q.info.zero_max = zero;
      q.info.min_n = 1;
      q.info.expression = "cs(n," + std::to_string(t) + "," + std::to_string(r) +
                          "): 0 for n <= " + std::to_string(zero) +
                          ", quasi-polynomial for n >= " + std::to_string(min_n);
      current = std::move(q);
      terms.clear();
    } else if (head == "end") {
      if (!current || terms.empty())
        data_error(lineno, "unexpected 'end'");
      const int degree = terms.rbegin()->first;
      std::vector<PeriodicNumber> coeffs(static_cast<std::size_t>(degree) + 1);
      for (auto& [p, c] : terms)
        coeffs[degree - p] = c;
      current->qp = QuasiPolynomial(std::move(coeffs));
      data.entries.push_back(std::move(*current));
      current.reset();
    } else if (head.rfind("n^", 0) == 0) {
      if (!current)
        data_error(lineno, "term outside a block");
      const int p = std::stoi(head.substr(2));
      std::string value;
      fields >> value;
      if (terms.count(p))
        data_error(lineno, "repeated power");
      terms.emplace(p, parse_periodic(value));
    } else if (head == "checksum") {
      std::string algo, hex;
      fields >> algo >> hex;
      if (algo != "fnv1a64")
        data_error(lineno, "unknown checksum algorithm");
      data.recorded = std::stoull(hex, nullptr, 16);
      data.body = data.text.substr(0, line_start);
      have_checksum = true;
    } else {
      data_error(lineno, "unrecognized line");
    }
  }
  if (current)
    data_error(lineno, "missing 'end'");
  if (!have_checksum)
    data_error(lineno, "missing checksum");
  if (fnv1a64(data.body) != data.recorded)
    throw std::logic_error("quasi-polynomial data checksum mismatch");
  return data;
}

const QuasiData& quasi_data() {
  static const QuasiData data = load_quasi_data();
  return data;
}

std::vector<FormulaInfo> build_catalog() {
  std::vector<FormulaInfo> out;
  auto add = [&](std::string id, std::string expr, std::vector<std::string> params, long min_n,
                 long min_t = 0, long min_r = 0) {
    FormulaInfo f;
    f.id = std::move(id);
    f.expression = std::move(expr);
    f.parameters = std::move(params);
    f.min_n = min_n;
    f.min_t = min_t;
    f.min_r = min_r;
    out.push_back(std::move(f));
  };
  add("cs_t1", "cs(n,t,1) = C(n+1, 2t-1) for t >= 2, n for t = 1", {"n", "t"}, 1, 1);
  add("cs_21", "cs(n,2,1) = (n^3 - n)/6", {"n"}, 1);
  add("cs_2r", "cs(n,2,r) = sum_i C(i+r-2, r-2) C(n-2r-2i+5, r+2), r >= 2", {"n", "r"}, 1, 0, 2);
  add("cs_2_total", "cs(n,2) = Fib(n+6) - (n^2 + 4n + 8)", {"n"}, 1);
  for (const auto& q : quasi_data().entries)
    out.push_back(q.info);
  add("sum_t_r1", "sum_t cs(n,t,1) = 2^n - 1", {"n"}, 1);
  add("sum_t_r2", "sum_t cs(n,t,2) = sum_{i=0}^{n-3} 2^i (2^(i+1) - 1) f(n-i-1)", {"n"}, 1);
  add("mb_k0", "mb(n,0) = 1", {"n"}, 0);
  add("mb_k1", "mb(n,1) = 2^n", {"n"}, 0);
  add("mb_k2", "mb(n,2) = 2^n (2^n - 1)/2 - 3^n + 2^n", {"n"}, 0);
  add("mb_k3", "mb(n,3) = 2^n (2^n - 1)(2^n - 2)/6 - 6^n + 5^n + 4^n - 3^n", {"n"}, 0);
  add("fib", "Fib(n), Fib(0) = 0, Fib(1) = 1", {"n"}, 0);
  return out;
}

bool uses(const FormulaInfo& f, const char* p) {
  return std::find(f.parameters.begin(), f.parameters.end(), p) != f.parameters.end();
}

BigInt exact(const Rational& v, std::string_view id, long n) {
  if (!is_integer(v))
    throw FormulaDefect(std::string(id) + " is not integral at n = " + std::to_string(n) + ": " +
                        to_string(v));
  return boost::multiprecision::numerator(v);
}

}  // namespace

std::string_view quasi_polynomial_data() { return quasi_data().text; }
std::uint64_t quasi_polynomial_data_checksum() { return fnv1a64(quasi_data().body); }
std::uint64_t quasi_polynomial_recorded_checksum() { return quasi_data().recorded; }

std::string FormulaInfo::range() const {
  std::string s = "n >= " + std::to_string(min_n);
  if (std::find(parameters.begin(), parameters.end(), "t") != parameters.end())
    s += ", t >= " + std::to_string(min_t);
  if (std::find(parameters.begin(), parameters.end(), "r") != parameters.end())
    s += ", r >= " + std::to_string(min_r);
  return s;
}

const std::vector<FormulaInfo>& formula_catalog() {
  static const std::vector<FormulaInfo> catalog = build_catalog();
  return catalog;
}

const FormulaInfo& formula_info(std::string_view id) {
  for (const auto& f : formula_catalog())
    if (f.id == id)
      return f;
  throw InvalidInput("unknown formula id '" + std::string(id) + "'");
}

std::vector<std::string> quasi_polynomial_ids() {
  std::vector<std::string> ids;
  for (const auto& q : quasi_data().entries)
    ids.push_back(q.info.id);
  return ids;
}

const QuasiPolynomial& catalog_quasi_polynomial(std::string_view id) {
  for (const auto& q : quasi_data().entries)
    if (q.info.id == id)
      return q.qp;
  throw InvalidInput("no stored quasi-polynomial '" + std::string(id) + "'");
}

BigInt catalog_eval(std::string_view id, const FormulaArgs& a) {
  const FormulaInfo& f = formula_info(id);
  if (a.n < f.min_n || (uses(f, "t") && a.t < f.min_t) || (uses(f, "r") && a.r < f.min_r))
    throw InvalidInput(f.id + " is defined for " + f.range());
  const long n = a.n;
  if (id == "cs_t1")
    return a.t == 1 ? BigInt(n) : binomial(n + 1, 2 * a.t - 1);
  if (id == "cs_21")
    return (BigInt(n) * n * n - n) / 6;
  if (id == "cs_2r") {
    const long r = a.r;
    BigInt sum = 0;
    for (long i = 0; i <= floor_div(n - 3 * r + 3, 2); ++i)
      sum += binomial(i + r - 2, r - 2) * binomial(n - 2 * r - 2 * i + 5, r + 2);
    return sum;
  }
  if (id == "cs_2_total")
    return fibonacci(n + 6) - (BigInt(n) * n + 4 * n + 8);
  if (f.zero_max) {
    if (n <= *f.zero_max)
      return 0;
    return exact(catalog_quasi_polynomial(id)(n), id, n);
  }
  if (id == "sum_t_r1")
    return pow2(n) - 1;
  if (id == "sum_t_r2") {
    BigInt sum = 0;
    for (long i = 0; i <= n - 3; ++i)
      sum += pow2(i) * (pow2(i + 1) - 1) * dyck_f(n - i - 1, DyckMethod::Closed);
    return sum;
  }
  if (id == "mb_k0")
    return mb_formula(n, 0);
  if (id == "mb_k1")
    return mb_formula(n, 1);
  if (id == "mb_k2")
    return mb_formula(n, 2);
  if (id == "mb_k3")
    return mb_formula(n, 3);
  if (id == "fib")
    return fibonacci(n);
  throw std::logic_error("catalog entry without implementation: " + f.id);
}

BigInt dyck_f(long k, DyckMethod method) {
  if (k < 1)
    throw InvalidInput("f(k) needs k >= 1");
  switch (method) {
    case DyckMethod::Closed: {
      BigInt num = 4 * binomial(2 * k - 1, k - 2);
      if (num % (k + 2) != 0)
        throw std::logic_error("f(k) closed form not integral");
      return num / (k + 2);
    }
    case DyckMethod::Sum: {
      BigInt sum = 0;
      for (long i = 1; 2 * i <= k; ++i)
        sum += binomial(2 * i, i) / (i + 1) * binomial(k - 1, 2 * i - 1) * pow2(k - 2 * i);
      return sum;
    }
    case DyckMethod::Brute: {
      if (k > 14)
        throw ResourceLimit("brute-force f(k) is limited to k <= 14");
      // Walk all (u'_p, v'_p) choices, keeping prefix(u') - prefix(v') >= 0.
      std::uint64_t pairs = 0;
      auto rec = [&](auto&& self, long pos, long diff) -> void {
        if (pos == k - 1) {
          if (diff - 1 == 0)
            ++pairs;
          return;
        }
        for (int u = 0; u <= 1; ++u)
          for (int v = 0; v <= 1; ++v) {
            const long d = diff + u - v;
            if (d >= 0)
              self(self, pos + 1, d);
          }
      };
      rec(rec, 0, 0);
      return pairs;
    }
  }
  throw std::logic_error("unknown method");
}

BigInt mb_formula(long n, int k) {
  if (n < 0)
    throw InvalidInput("mb(n,k) needs n >= 0");
  const BigInt p = pow2(n);
  switch (k) {
    case 0: return 1;
    case 1: return p;
    case 2: return p * (p - 1) / 2 - power(3, n) + p;
    case 3: return p * (p - 1) * (p - 2) / 6 - power(6, n) + power(5, n) + power(4, n) - power(3, n);
    default: throw InvalidInput("mb(n,k) formulas are available for k <= 3");
  }
}

BigInt mb_brute_force(int n, int k) {
  if (n < 0 || n > 4 || k < 0 || k > 3)
    throw ResourceLimit("mb brute force is limited to 0 <= n <= 4, 0 <= k <= 3");
  const int sets = 1 << n;
  auto incomparable = [](int a, int b) { return (a & b) != a && (a & b) != b; };
  std::uint64_t count = 0;
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(chosen.size()) == k) {
      ++count;
      return;
    }
    for (int s = from; s < sets; ++s) {
      bool ok = true;
      for (int c : chosen)
        ok = ok && incomparable(c, s);
      if (!ok)
        continue;
      chosen.push_back(s);
      self(self, s + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return count;
}

PowerSeries::PowerSeries(int order) : order_(order), coefficients_(static_cast<std::size_t>(order) + 1) {
  if (order < 0)
    throw InvalidInput("series order must be >= 0");
}

PowerSeries::PowerSeries(int order, std::vector<BigInt> coefficients) : PowerSeries(order) {
  const std::size_t m = std::min(coefficients.size(), coefficients_.size());
  std::move(coefficients.begin(), coefficients.begin() + static_cast<std::ptrdiff_t>(m),
            coefficients_.begin());
}

PowerSeries PowerSeries::monomial(int order, int power, BigInt coefficient) {
  PowerSeries s(order);
  if (power >= 0 && power <= order)
    s.coefficients_[power] = std::move(coefficient);
  return s;
}

const BigInt& PowerSeries::operator[](int i) const {
  if (i < 0 || i > order_)
    throw InvalidInput("coefficient index " + std::to_string(i) + " beyond truncation order " +
                       std::to_string(order_));
  return coefficients_[i];
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
  const int m = std::min(order_, o.order_);
  PowerSeries s(m);
  for (int i = 0; i <= m; ++i)
    s.coefficients_[i] = coefficients_[i] + o.coefficients_[i];
  return s;
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
  const int m = std::min(order_, o.order_);
  PowerSeries s(m);
  for (int i = 0; i <= m; ++i)
    s.coefficients_[i] = coefficients_[i] - o.coefficients_[i];
  return s;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
  const int m = std::min(order_, o.order_);
  PowerSeries s(m);
  for (int i = 0; i <= m; ++i) {
    if (coefficients_[i] == 0)
      continue;
    for (int j = 0; i + j <= m; ++j)
      if (o.coefficients_[j] != 0)
        s.coefficients_[i + j] += coefficients_[i] * o.coefficients_[j];
  }
  return s;
}

PowerSeries PowerSeries::inverse() const {
  const BigInt& a0 = coefficients_[0];
  if (a0 != 1 && a0 != -1)
    throw InvalidInput("series inverse needs constant term +1 or -1");
  PowerSeries s(order_);
  s.coefficients_[0] = a0;
  for (int i = 1; i <= order_; ++i) {
    BigInt acc = 0;
    for (int j = 1; j <= i; ++j)
      if (coefficients_[j] != 0)
        acc += coefficients_[j] * s.coefficients_[i - j];
    s.coefficients_[i] = -a0 * acc;
  }
  return s;
}

PowerSeries PowerSeries::pow(int e) const {
  if (e < 0)
    return inverse().pow(-e);
  PowerSeries result = monomial(order_, 0);
  PowerSeries base = *this;
  while (e > 0) {
    if (e & 1)
      result = result * base;
    e >>= 1;
    if (e)
      base = base * base;
  }
  return result;
}

PowerSeries generating_function(SeriesExpr expr, int order, long r) {
  const PowerSeries one_minus_x(order, {1, -1});
  switch (expr) {
    case SeriesExpr::R1:
      return PowerSeries::monomial(order, 2) * one_minus_x.pow(4).inverse();
    case SeriesExpr::RGe2: {
      if (r < 2)
        throw InvalidInput("the r >= 2 generating function needs r >= 2");
      const PowerSeries one_minus_x2(order, {1, 0, -1});
      const PowerSeries den = one_minus_x.pow(static_cast<int>(r + 3)) *
                              one_minus_x2.pow(static_cast<int>(r - 1));
      if (3 * r - 3 > order)
        return PowerSeries(order);
      return PowerSeries::monomial(order, static_cast<int>(3 * r - 3)) * den.inverse();
    }
    case SeriesExpr::Cs2Total: {
      const PowerSeries num(order, {0, 0, 1, 1});
      const PowerSeries fib_den(order, {1, -1, -1});
      return num * (one_minus_x.pow(3) * fib_den).inverse();
    }
  }
  throw std::logic_error("unknown series");
}

BigInt series_coefficient(SeriesExpr expr, long n, long r, int truncation_order) {
  if (n < 0)
    throw InvalidInput("series index must be >= 0");
  if (n > truncation_order)
    throw InvalidInput("x^" + std::to_string(n) + " is beyond the truncation order " +
                       std::to_string(truncation_order));
  return generating_function(expr, static_cast<int>(n), r)[static_cast<int>(n)];
}

}  // namespace csg

#include "csg/polytope.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <boost/multiprecision/integer.hpp>

#include "csg/errors.hpp"

namespace csg {

std::string to_string(Relation relation) {
  switch (relation) {
    case Relation::LessEq: return "<=";
    case Relation::Equal: return "=";
    case Relation::GreaterEq: return ">=";
  }
  return "?";
}

int RationalLinearSystem::add_variable(std::string name, std::optional<long> lower,
                                       std::optional<long> upper) {
  if (name.empty())
    throw InvalidInput("variable name must not be empty");
  if (has_variable(name))
    throw InvalidInput("variable '" + name + "' declared twice");
  if (lower && upper && *lower > *upper)
    throw InvalidInput("variable '" + name + "' has lower bound above upper bound");
  variables_.push_back({std::move(name), lower, upper});
  return num_variables() - 1;
}

int RationalLinearSystem::index_of(std::string_view name) const {
  for (int i = 0; i < num_variables(); ++i)
    if (variables_[i].name == name)
      return i;
  throw InvalidInput("unknown variable '" + std::string(name) + "'");
}

bool RationalLinearSystem::has_variable(std::string_view name) const {
  return std::any_of(variables_.begin(), variables_.end(),
                     [&](const Variable& v) { return v.name == name; });
}

void RationalLinearSystem::set_bounds(int var, std::optional<long> lower, std::optional<long> upper) {
  if (var < 0 || var >= num_variables())
    throw InvalidInput("variable index out of range");
  if (lower && upper && *lower > *upper)
    throw InvalidInput("variable '" + variables_[var].name + "' has lower bound above upper bound");
  variables_[var].lower = lower;
  variables_[var].upper = upper;
}

void RationalLinearSystem::add_constraint(std::vector<Term> terms, Relation relation, Rational rhs,
                                          std::string label) {
  std::map<int, Rational> merged;
  for (auto& t : terms) {
    if (t.var < 0 || t.var >= num_variables())
      throw InvalidInput("constraint refers to an undeclared variable");
    merged[t.var] += t.coefficient;
  }
  Constraint c{{}, relation, std::move(rhs), std::move(label)};
  for (auto& [v, a] : merged)
    if (a != 0)
      c.terms.push_back({v, a});
  constraints_.push_back(std::move(c));
}

void RationalLinearSystem::add_constraint(const std::vector<std::pair<std::string, Rational>>& terms,
                                          Relation relation, Rational rhs, std::string label) {
  std::vector<Term> t;
  for (const auto& [name, a] : terms)
    t.push_back({index_of(name), a});
  add_constraint(std::move(t), relation, std::move(rhs), std::move(label));
}

bool RationalLinearSystem::satisfied_by(std::span<const long> values) const {
  if (static_cast<int>(values.size()) != num_variables())
    throw InvalidInput("assignment has the wrong number of values");
  for (int i = 0; i < num_variables(); ++i) {
    if (variables_[i].lower && values[i] < *variables_[i].lower)
      return false;
    if (variables_[i].upper && values[i] > *variables_[i].upper)
      return false;
  }
  for (const auto& c : constraints_) {
    Rational lhs = 0;
    for (const auto& t : c.terms)
      lhs += t.coefficient * values[t.var];
    const bool ok = c.relation == Relation::LessEq ? lhs <= c.rhs
                    : c.relation == Relation::Equal ? lhs == c.rhs
                                                    : lhs >= c.rhs;
    if (!ok)
      return false;
  }
  return true;
}

nlohmann::json RationalLinearSystem::to_json() const {
  nlohmann::json vars = nlohmann::json::array();
  for (const auto& v : variables_) {
    nlohmann::json j{{"name", v.name}};
    j["lower"] = v.lower ? nlohmann::json(std::to_string(*v.lower)) : nlohmann::json(nullptr);
    j["upper"] = v.upper ? nlohmann::json(std::to_string(*v.upper)) : nlohmann::json(nullptr);
    vars.push_back(std::move(j));
  }
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : constraints_) {
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& t : c.terms)
      terms[variables_[t.var].name] = to_string(t.coefficient);
    cons.push_back({{"label", c.label},
                    {"terms", terms},
                    {"relation", to_string(c.relation)},
                    {"rhs", to_string(c.rhs)}});
  }
  return {{"variables", vars}, {"constraints", cons}};
}

std::string RationalLinearSystem::to_lp() const {
  std::ostringstream out;
  out << "subject to\n";
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const auto& c = constraints_[i];
    out << " " << (c.label.empty() ? "c" + std::to_string(i + 1) : c.label) << ":";
    if (c.terms.empty())
      out << " 0";
    for (std::size_t k = 0; k < c.terms.size(); ++k) {
      const Rational& a = c.terms[k].coefficient;
      if (k == 0)
        out << " " << to_string(a);
      else
        out << (a < 0 ? " - " : " + ") << to_string(a < 0 ? Rational(-a) : a);
      out << " " << variables_[c.terms[k].var].name;
    }
    out << " " << to_string(c.relation) << " " << to_string(c.rhs) << "\n";
  }
  out << "bounds\n";
  for (const auto& v : variables_) {
    out << " " << (v.lower ? std::to_string(*v.lower) : "-inf") << " <= " << v.name << " <= "
        << (v.upper ? std::to_string(*v.upper) : "+inf") << "\n";
  }
  out << "general\n";
  for (const auto& v : variables_)
    out << " " << v.name << "\n";
  out << "end\n";
  return out.str();
}

namespace {

using i128 = __int128;
constexpr std::int64_t kInf = std::int64_t{1} << 60;

// a . x <= rhs with integer data.
struct IntRow {
  std::vector<std::pair<int, std::int64_t>> terms;
  std::int64_t rhs;
};

std::int64_t checked_int64(const BigInt& v) {
  if (v > BigInt(kInf / 4) || v < BigInt(-kInf / 4))
    throw ResourceLimit("constraint data too large for lattice search");
  return static_cast<std::int64_t>(v);
}

/// Scales a constraint to integer coefficients and splits it into <= rows.
std::vector<IntRow> integer_rows(const Constraint& c) {
  BigInt scale = boost::multiprecision::denominator(c.rhs);
  for (const auto& t : c.terms) {
    const BigInt d = boost::multiprecision::denominator(t.coefficient);
    scale = scale / boost::multiprecision::gcd(scale, d) * d;
  }
  IntRow le;
  for (const auto& t : c.terms)
    le.terms.emplace_back(t.var, checked_int64(boost::multiprecision::numerator(Rational(t.coefficient * scale))));
  const BigInt rhs = boost::multiprecision::numerator(Rational(c.rhs * scale));
  le.rhs = checked_int64(rhs);
  IntRow ge = le;
  for (auto& t : ge.terms)
    t.second = -t.second;
  ge.rhs = -ge.rhs;
  switch (c.relation) {
    case Relation::LessEq: return {le};
    case Relation::GreaterEq: return {ge};
    case Relation::Equal: return {le, ge};
  }
  return {};
}

i128 floor_div128(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

i128 ceil_div128(i128 a, i128 b) { return -floor_div128(-a, b); }

class LatticeSearch {
 public:
  LatticeSearch(const RationalLinearSystem& system, const LatticeOptions& options,
                const std::function<bool(std::span<const long>)>* visit)
      : system_(system), options_(options), visit_(visit) {
    nv_ = system.num_variables();
    for (const auto& c : system.constraints())
      for (auto& row : integer_rows(c))
        rows_.push_back(std::move(row));
    rows_of_var_.assign(nv_, {});
    last_rows_.assign(nv_, {});
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
      int last = -1;
      for (const auto& [v, a] : rows_[r].terms) {
        rows_of_var_[v].push_back(r);
        last = std::max(last, v);
      }
      if (last >= 0)
        last_rows_[last].push_back(r);
    }
    lo_.assign(nv_, -kInf);
    hi_.assign(nv_, kInf);
    for (int i = 0; i < nv_; ++i) {
      const auto& v = system.variables()[i];
      if (v.lower)
        lo_[i] = std::max<std::int64_t>(*v.lower, -kInf);
      if (v.upper)
        hi_[i] = std::min<std::int64_t>(*v.upper, kInf);
    }
    in_queue_.assign(rows_.size(), 0);
    values_.assign(nv_, 0);
  }

  std::uint64_t run() {
    for (const auto& row : rows_)
      if (row.terms.empty() && row.rhs < 0)
        return 0;
    if (options_.propagate) {
      std::vector<int> all(rows_.size());
      std::iota(all.begin(), all.end(), 0);
      const bool ok = propagate(all, 2'000'000);
      if (!ok)
        return 0;
      for (int i = 0; i < nv_; ++i)
        if (lo_[i] <= -kInf || hi_[i] >= kInf)
          throw InvalidInput("variable '" + system_.variables()[i].name +
                             "' is unbounded; lattice counting needs finite bounds");
    } else {
      for (int i = 0; i < nv_; ++i)
        if (lo_[i] <= -kInf || hi_[i] >= kInf)
          throw InvalidInput("variable '" + system_.variables()[i].name +
                             "' has no finite declared bounds");
    }
    dfs(0);
    return count_;
  }

 private:
  bool propagate_row(int r, std::vector<int>& changed) {
    const IntRow& row = rows_[r];
    i128 min_sum = 0;
    int infinite = 0;
    int infinite_var = -1;
    for (const auto& [v, a] : row.terms) {
      const std::int64_t b = a > 0 ? lo_[v] : hi_[v];
      if (b <= -kInf || b >= kInf) {
        ++infinite;
        infinite_var = v;
      } else {
        min_sum += static_cast<i128>(a) * b;
      }
    }
    if (infinite == 0 && min_sum > row.rhs)
      return false;
    if (infinite >= 2)
      return true;
    for (const auto& [v, a] : row.terms) {
      if (infinite == 1 && v != infinite_var)
        continue;
      const i128 own = infinite == 1 ? 0 : static_cast<i128>(a) * (a > 0 ? lo_[v] : hi_[v]);
      const i128 rest = static_cast<i128>(row.rhs) - (min_sum - own);
      if (a > 0) {
        const i128 bound = floor_div128(rest, a);
        if (bound < hi_[v]) {
          if (bound < lo_[v])
            return false;
          hi_[v] = static_cast<std::int64_t>(bound);
          changed.push_back(v);
        }
      } else {
        const i128 bound = ceil_div128(rest, a);
        if (bound > lo_[v]) {
          if (bound > hi_[v])
            return false;
          lo_[v] = static_cast<std::int64_t>(bound);
          changed.push_back(v);
        }
      }
    }
    return true;
  }

  bool propagate(const std::vector<int>& seeds, std::uint64_t max_steps) {
    std::vector<int> queue;
    for (int r : seeds)
      if (!in_queue_[r]) {
        in_queue_[r] = 1;
        queue.push_back(r);
      }
    std::vector<int> changed;
    std::uint64_t steps = 0;
    std::size_t head = 0;
    bool ok = true;
    while (head < queue.size()) {
      const int r = queue[head++];
      in_queue_[r] = 0;
      changed.clear();
      if (!propagate_row(r, changed)) {
        ok = false;
        break;
      }
      for (int v : changed) {
        if (++steps > max_steps)
          throw InvalidInput("bounds of variable '" + system_.variables()[v].name +
                             "' do not converge; the system is unbounded");
        for (int r2 : rows_of_var_[v])
          if (!in_queue_[r2]) {
            in_queue_[r2] = 1;
            queue.push_back(r2);
          }
      }
      if (head > 4096 && head * 2 > queue.size()) {
        queue.erase(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(head));
        head = 0;
      }
    }
    for (std::size_t i = head; i < queue.size(); ++i)
      in_queue_[queue[i]] = 0;
    return ok;
  }

  bool rows_hold(int var) const {
    for (int r : last_rows_[var]) {
      i128 sum = 0;
      for (const auto& [v, a] : rows_[r].terms)
        sum += static_cast<i128>(a) * values_[v];
      if (sum > rows_[r].rhs)
        return false;
    }
    return true;
  }

  void dfs(int i) {
    if (stopped_)
      return;
    if (i == nv_) {
      ++count_;
      if (visit_ && !(*visit_)(std::span<const long>(values_)))
        stopped_ = true;
      if (options_.limit && count_ >= *options_.limit)
        stopped_ = true;
      return;
    }
    const std::int64_t from = lo_[i], to = hi_[i];
    if (!options_.propagate) {
      for (std::int64_t v = from; v <= to && !stopped_; ++v) {
        values_[i] = static_cast<long>(v);
        if (rows_hold(i))
          dfs(i + 1);
      }
      return;
    }
    if (from == to) {
      values_[i] = static_cast<long>(from);
      dfs(i + 1);
      return;
    }
    const std::vector<std::int64_t> saved_lo = lo_, saved_hi = hi_;
    for (std::int64_t v = from; v <= to && !stopped_; ++v) {
      lo_[i] = hi_[i] = v;
      values_[i] = static_cast<long>(v);
      if (propagate(rows_of_var_[i], std::numeric_limits<std::uint64_t>::max()))
        dfs(i + 1);
      lo_ = saved_lo;
      hi_ = saved_hi;
    }
  }

  const RationalLinearSystem& system_;
  LatticeOptions options_;
  const std::function<bool(std::span<const long>)>* visit_;
  int nv_ = 0;
  std::vector<IntRow> rows_;
  std::vector<std::vector<int>> rows_of_var_;
  std::vector<std::vector<int>> last_rows_;
  std::vector<std::int64_t> lo_, hi_;
  std::vector<char> in_queue_;
  std::vector<long> values_;
  std::uint64_t count_ = 0;
  bool stopped_ = false;
};

}  // namespace

BigInt count_lattice_points(const RationalLinearSystem& system, const LatticeOptions& options) {
  LatticeSearch search(system, options, nullptr);
  return search.run();
}

std::uint64_t enumerate_lattice_points(const RationalLinearSystem& system,
                                       const std::function<bool(std::span<const long>)>& visit,
                                       const LatticeOptions& options) {
  LatticeSearch search(system, options, &visit);
  return search.run();
}

namespace {

struct Overflow {};

inline std::int64_t fm_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Overflow{};
  return r;
}
inline std::int64_t fm_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r) || r == std::numeric_limits<std::int64_t>::min())
    throw Overflow{};
  return r;
}
inline std::int64_t fm_gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline BigInt fm_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt fm_add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt fm_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

template <class Int>
struct FmRow {
  std::vector<Int> a;  // a . x <= b
  Int b;
  std::vector<std::uint64_t> history;
};

template <class Int>
struct CoefficientHash {
  std::size_t operator()(const std::vector<Int>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (const auto& x : v) {
      std::size_t e;
      if constexpr (std::is_same_v<Int, std::int64_t>)
        e = std::hash<std::int64_t>{}(x);
      else
        e = static_cast<std::size_t>(static_cast<std::uint64_t>(x & 0xffffffffffffULL)) ^
            (x < 0 ? 0x9e3779b97f4a7c15ULL : 0);
      h = (h ^ e) * 1099511628211ULL;
    }
    return h;
  }
};

template <class Int>
class FourierMotzkin {
 public:
  FourierMotzkin(int nv, const FourierMotzkinOptions& options) : nv_(nv), options_(options) {}

  // Returns false once a contradiction 0 <= b < 0 shows up.
  bool add(std::vector<Int> a, Int b, std::vector<std::uint64_t> history) {
    Int g = 0;
    for (const auto& x : a)
      g = fm_gcd(g, x);
    if (g == 0) {
      if (b < 0)
        return false;
      return true;
    }
    g = fm_gcd(g, b);
    if (g < 0)
      g = -g;
    if (g > 1) {
      for (auto& x : a)
        x /= g;
      b /= g;
    }
    auto it = index_.find(a);
    if (it != index_.end()) {
      FmRow<Int>& existing = rows_[it->second];
      if (b < existing.b) {
        existing.b = b;
        existing.history = std::move(history);
      }
      return true;
    }
    index_.emplace(a, rows_.size());
    rows_.push_back({std::move(a), std::move(b), std::move(history)});
    if (rows_.size() > options_.max_constraints)
      throw ResourceLimit("Fourier-Motzkin exceeded " + std::to_string(options_.max_constraints) +
                          " constraints");
    return true;
  }

  Feasibility run() {
    std::vector<char> eliminated(nv_, 0);
    int steps = 0;
    while (true) {
      int best = -1;
      std::size_t best_cost = 0;
      for (int v = 0; v < nv_; ++v) {
        if (eliminated[v])
          continue;
        std::size_t pos = 0, neg = 0;
        for (const auto& r : rows_) {
          if (r.a[v] > 0)
            ++pos;
          else if (r.a[v] < 0)
            ++neg;
        }
        if (pos + neg == 0) {
          eliminated[v] = 1;
          continue;
        }
        const std::size_t cost = pos * neg;
        if (best < 0 || cost < best_cost) {
          best = v;
          best_cost = cost;
        }
      }
      if (best < 0)
        return Feasibility::Feasible;
      eliminated[best] = 1;
      ++steps;
      std::vector<FmRow<Int>> old = std::move(rows_);
      rows_.clear();
      index_.clear();
      std::vector<const FmRow<Int>*> pos, neg;
      for (auto& r : old) {
        if (r.a[best] > 0)
          pos.push_back(&r);
        else if (r.a[best] < 0)
          neg.push_back(&r);
        else if (!add(r.a, r.b, r.history))
          return Feasibility::Infeasible;
      }
      for (const auto* p : pos)
        for (const auto* q : neg) {
          std::vector<std::uint64_t> history(p->history.size());
          std::size_t ancestors = 0;
          for (std::size_t w = 0; w < history.size(); ++w) {
            history[w] = p->history[w] | q->history[w];
            ancestors += static_cast<std::size_t>(std::popcount(history[w]));
          }
          // Chernikov: more than steps + 1 ancestors means redundant.
          if (ancestors > static_cast<std::size_t>(steps) + 1)
            continue;
          const Int cp = -q->a[best];
          const Int cq = p->a[best];
          std::vector<Int> a(nv_);
          for (int v = 0; v < nv_; ++v)
            a[v] = fm_add(fm_mul(cp, p->a[v]), fm_mul(cq, q->a[v]));
          const Int b = fm_add(fm_mul(cp, p->b), fm_mul(cq, q->b));
          if (!add(std::move(a), b, std::move(history)))
            return Feasibility::Infeasible;
        }
    }
  }

 private:
  int nv_;
  FourierMotzkinOptions options_;
  std::vector<FmRow<Int>> rows_;
  std::unordered_map<std::vector<Int>, std::size_t, CoefficientHash<Int>> index_;
};

struct DenseRow {
  std::vector<BigInt> a;
  BigInt b;
  bool equality;
};

// Integer-scaled dense rows: bounds and constraints, <= or =.
std::vector<DenseRow> dense_rows(const RationalLinearSystem& s) {
  const int nv = s.num_variables();
  std::vector<DenseRow> out;
  for (int i = 0; i < nv; ++i) {
    const auto& v = s.variables()[i];
    if (v.upper) {
      DenseRow r{std::vector<BigInt>(nv), BigInt(*v.upper), false};
      r.a[i] = 1;
      out.push_back(std::move(r));
    }
    if (v.lower) {
      DenseRow r{std::vector<BigInt>(nv), BigInt(-*v.lower), false};
      r.a[i] = -1;
      out.push_back(std::move(r));
    }
  }
  for (const auto& c : s.constraints()) {
    BigInt scale = boost::multiprecision::denominator(c.rhs);
    for (const auto& t : c.terms) {
      const BigInt d = boost::multiprecision::denominator(t.coefficient);
      scale = scale / boost::multiprecision::gcd(scale, d) * d;
    }
    DenseRow r{std::vector<BigInt>(nv), boost::multiprecision::numerator(Rational(c.rhs * scale)),
               c.relation == Relation::Equal};
    for (const auto& t : c.terms)
      r.a[t.var] = boost::multiprecision::numerator(Rational(t.coefficient * scale));
    if (c.relation == Relation::GreaterEq) {
      for (auto& x : r.a)
        x = -x;
      r.b = -r.b;
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Uses each equality to eliminate one variable from every other row.
bool substitute_equalities(std::vector<DenseRow>& rows) {
  for (std::size_t e = 0; e < rows.size(); ++e) {
    if (!rows[e].equality)
      continue;
    const auto& eq = rows[e];
    int pivot = -1;
    for (std::size_t v = 0; v < eq.a.size(); ++v)
      if (eq.a[v] != 0 && (pivot < 0 || abs(eq.a[v]) < abs(eq.a[pivot])))
        pivot = static_cast<int>(v);
    if (pivot < 0) {
      if (eq.b != 0)
        return false;
      continue;
    }
    const BigInt ep = eq.a[pivot];
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == e || rows[o].a[pivot] == 0)
        continue;
      auto& row = rows[o];
      const BigInt rp = row.a[pivot];
      // Multiply the row by |ep| (keeps the direction), then cancel the pivot.
      const BigInt m = ep > 0 ? ep : BigInt(-ep);
      const BigInt k = ep > 0 ? rp : BigInt(-rp);
      for (std::size_t v = 0; v < row.a.size(); ++v)
        row.a[v] = m * row.a[v] - k * eq.a[v];
      row.b = m * row.b - k * eq.b;
    }
  }
  return true;
}

template <class Int>
Feasibility run_fm(const std::vector<DenseRow>& rows, int nv, const FourierMotzkinOptions& options) {
  std::size_t count = 0;
  for (const auto& r : rows)
    count += r.equality ? 0 : 1;
  const std::size_t words = (count + 63) / 64 + 1;
  FourierMotzkin<Int> fm(nv, options);
  std::size_t index = 0;
  for (const auto& r : rows) {
    if (r.equality)
      continue;
    std::vector<Int> a(nv);
    for (int v = 0; v < nv; ++v) {
      if constexpr (std::is_same_v<Int, std::int64_t>) {
        if (abs(r.a[v]) > BigInt(std::int64_t{1} << 62))
          throw Overflow{};
        a[v] = static_cast<std::int64_t>(r.a[v]);
      } else {
        a[v] = r.a[v];
      }
    }
    Int b;
    if constexpr (std::is_same_v<Int, std::int64_t>) {
      if (abs(r.b) > BigInt(std::int64_t{1} << 62))
        throw Overflow{};
      b = static_cast<std::int64_t>(r.b);
    } else {
      b = r.b;
    }
    std::vector<std::uint64_t> history(words, 0);
    history[index / 64] |= std::uint64_t{1} << (index % 64);
    ++index;
    if (!fm.add(std::move(a), b, std::move(history)))
      return Feasibility::Infeasible;
  }
  return fm.run();
}

}  // namespace

Feasibility rational_feasibility(const RationalLinearSystem& system, const FourierMotzkinOptions& options) {
  std::vector<DenseRow> rows = dense_rows(system);
  if (!substitute_equalities(rows))
    return Feasibility::Infeasible;
  // Equalities left after substitution only involve eliminated pivots or are
  // trivially 0 = b.
  for (const auto& r : rows)
    if (r.equality && std::all_of(r.a.begin(), r.a.end(), [](const BigInt& x) { return x == 0; }) &&
        r.b != 0)
      return Feasibility::Infeasible;
  try {
    try {
      return run_fm<std::int64_t>(rows, system.num_variables(), options);
    } catch (const Overflow&) {
      return run_fm<BigInt>(rows, system.num_variables(), options);
    }
  } catch (const ResourceLimit&) {
    return Feasibility::ResourceLimit;
  }
}

RationalLinearSystem build_compact_t2(int n, int r) {
  if (n < 2)
    throw InvalidInput("the compact two-type model needs n >= 2");
  if (r < 1)
    throw InvalidInput("the compact two-type model needs r >= 1");
  RationalLinearSystem s;
  const int n1 = s.add_variable("n_1", 1, n - 1);
  const int n2 = s.add_variable("n_2", 1, n - 1);
  std::vector<std::array<int, 2>> m(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < 2; ++j)
      m[i][j] = s.add_variable("m_" + std::to_string(i + 1) + "_" + std::to_string(j + 1), 0, n);
  s.add_constraint({{n1, 1}, {n2, 1}}, Relation::Equal, n, "sum");
  if (r == 1) {
    s.add_constraint({{m[0][0], 1}}, Relation::GreaterEq, 1, "m11_lower");
    s.add_constraint({{m[0][0], 1}, {n1, -1}}, Relation::LessEq, 0, "m11_upper");
    s.add_constraint({{m[0][1], 1}, {n2, -1}}, Relation::LessEq, -1, "m12_upper");
    return s;
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < 2; ++j)
      s.add_constraint({{m[i][j], 1}, {j == 0 ? n1 : n2, -1}}, Relation::LessEq, 0,
                       "m" + std::to_string(i + 1) + std::to_string(j + 1) + "_upper");
  for (int i = 0; i + 1 < r; ++i) {
    const std::string tag = std::to_string(i + 1);
    s.add_constraint({{m[i][0], 1}, {m[i + 1][0], -1}}, Relation::GreaterEq, 1, "first_" + tag);
    s.add_constraint({{m[i][0], 1}, {m[i][1], 1}, {m[i + 1][0], -1}, {m[i + 1][1], -1}},
                     Relation::LessEq, -1, "total_" + tag);
  }
  return s;
}

RationalLinearSystem build_big_m(int n, int t, int r) {
  if (t + r <= 2)
    throw InvalidInput("the Big-M model needs t + r > 2");
  if (t < 1 || r < 1)
    throw InvalidInput("the Big-M model needs t >= 1 and r >= 1");
  if (t > n)
    throw InvalidInput("the Big-M model needs t <= n");
  const long k = n - t + 1;
  RationalLinearSystem s;
  auto id = [](std::initializer_list<int> xs) {
    std::string out;
    for (int x : xs)
      out += "_" + std::to_string(x);
    return out;
  };
  std::vector<int> nj(t + 1);
  for (int j = 1; j <= t; ++j)
    nj[j] = s.add_variable("n" + id({j}), 1, n);
  std::vector<std::vector<int>> m(r + 1, std::vector<int>(t + 1));
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= t; ++j)
      m[i][j] = s.add_variable("m" + id({i, j}), 0, n);

  std::vector<Term> sum;
  for (int j = 1; j <= t; ++j)
    sum.push_back({nj[j], 1});
  s.add_constraint(sum, Relation::Equal, n, "ilp01");
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= t; ++j)
      s.add_constraint({{nj[j], 1}, {m[i][j], -1}}, Relation::GreaterEq, 0, "ilp02" + id({i, j}));

  // Partial-sum comparators for ordered pairs p != q.
  for (int p = 1; p <= r; ++p)
    for (int q = 1; q <= r; ++q) {
      if (p == q)
        continue;
      std::vector<Term> any;
      for (int j = 1; j <= t; ++j) {
        const int x1 = s.add_variable("x1" + id({p, q, j}), 0, 1);
        const int x2 = s.add_variable("x2" + id({p, q, j}), 0, 1);
        std::vector<Term> diff;
        for (int h = 1; h <= j; ++h) {
          diff.push_back({m[p][h], 1});
          diff.push_back({m[q][h], -1});
        }
        auto c3 = diff;
        c3.push_back({x1, -1});
        c3.push_back({x2, n});
        s.add_constraint(c3, Relation::GreaterEq, 0, "ilp03" + id({p, q, j}));
        auto c4 = diff;
        c4.push_back({x1, -n});
        s.add_constraint(c4, Relation::LessEq, 0, "ilp04" + id({p, q, j}));
        s.add_constraint({{x1, 1}, {x2, 1}}, Relation::Equal, 1, "ilp05" + id({p, q, j}));
        any.push_back({x1, 1});
      }
      s.add_constraint(any, Relation::GreaterEq, 1, "ilp06" + id({p, q}));
    }

  // Column condition.
  for (int j = 1; j < t; ++j) {
    std::vector<Term> any;
    for (int i = 1; i <= r; ++i) {
      const int x3 = s.add_variable("x3" + id({i, j}), 0, 1);
      const int x4 = s.add_variable("x4" + id({i, j}), 0, 1);
      const int x5 = s.add_variable("x5" + id({i, j}), 0, 1);
      s.add_constraint({{m[i][j], 1}, {x3, -1}}, Relation::GreaterEq, 0, "ilp07" + id({i, j}));
      s.add_constraint({{x3, k}, {m[i][j], -1}}, Relation::GreaterEq, 0, "ilp08" + id({i, j}));
      s.add_constraint({{m[i][j + 1], 1}, {nj[j + 1], -1}, {x4, 1}}, Relation::LessEq, 0,
                       "ilp09" + id({i, j}));
      s.add_constraint({{nj[j + 1], 1}, {m[i][j + 1], -1}, {x4, -k}}, Relation::LessEq, 0,
                       "ilp10" + id({i, j}));
      s.add_constraint({{x5, 2}, {x3, -1}, {x4, -1}}, Relation::LessEq, 0, "ilp11" + id({i, j}));
      s.add_constraint({{x5, 1}, {x3, -1}, {x4, -1}}, Relation::GreaterEq, -1, "ilp12" + id({i, j}));
      any.push_back({x5, 1});
    }
    s.add_constraint(any, Relation::GreaterEq, 1, "ilp13" + id({j}));
  }

  // Lexicographic order of consecutive rows.
  for (int i = 1; i < r; ++i) {
    std::vector<int> x6f(t + 1), x6b(t + 1);
    for (int j = 1; j <= t; ++j) {
      x6f[j] = s.add_variable("x6" + id({i, i + 1, j}), 0, 1);
      const int x7f = s.add_variable("x7" + id({i, i + 1, j}), 0, 1);
      x6b[j] = s.add_variable("x6" + id({i + 1, i, j}), 0, 1);
      const int x7b = s.add_variable("x7" + id({i + 1, i, j}), 0, 1);
      s.add_constraint({{m[i][j], 1}, {m[i + 1][j], -1}, {x6f[j], -1}, {x7f, k}}, Relation::GreaterEq,
                       0, "ilp14" + id({i, j}));
      s.add_constraint({{m[i][j], 1}, {m[i + 1][j], -1}, {x6f[j], -k}}, Relation::LessEq, 0,
                       "ilp15" + id({i, j}));
      s.add_constraint({{m[i + 1][j], 1}, {m[i][j], -1}, {x6b[j], -1}, {x7b, k}}, Relation::GreaterEq,
                       0, "ilp16" + id({i, j}));
      s.add_constraint({{m[i + 1][j], 1}, {m[i][j], -1}, {x6b[j], -k}}, Relation::LessEq, 0,
                       "ilp17" + id({i, j}));
      s.add_constraint({{x6f[j], 1}, {x7f, 1}}, Relation::Equal, 1, "ilp18" + id({i, j}));
      s.add_constraint({{x6b[j], 1}, {x7b, 1}}, Relation::Equal, 1, "ilp19" + id({i, j}));
    }
    std::vector<Term> any;
    for (int j = 1; j <= t; ++j) {
      const int x8 = s.add_variable("x8" + id({i, j}), 0, 1);
      s.add_constraint({{x8, 1}, {x6f[j], -1}}, Relation::LessEq, 0, "ilp20" + id({i, j}));
      std::vector<Term> c21{{x8, t}};
      std::vector<Term> c22{{x8, 1}, {x6f[j], -1}};
      for (int h = 1; h <= j; ++h) {
        c21.push_back({x6b[h], 1});
        c22.push_back({x6b[h], 1});
      }
      s.add_constraint(c21, Relation::LessEq, t, "ilp21" + id({i, j}));
      s.add_constraint(c22, Relation::GreaterEq, 0, "ilp22" + id({i, j}));
      any.push_back({x8, 1});
    }
    s.add_constraint(any, Relation::GreaterEq, 1, "ilp23" + id({i}));
  }
  return s;
}

}  // namespace csg

#include "csg/subcases.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "csg/errors.hpp"
#include "csg/parallel.hpp"

namespace csg {

namespace {

long pow3(int e) {
  long v = 1;
  for (int i = 0; i < e; ++i)
    v *= 3;
  return v;
}

std::string pair_list(const std::map<std::pair<int, int>, int>& m) {
  std::string s = "[";
  bool first = true;
  for (const auto& [key, v] : m) {
    s += (first ? "" : ",") + std::string("(") + std::to_string(key.first) + "," +
         std::to_string(key.second) + "):" + std::to_string(v);
    first = false;
  }
  return s + "]";
}

std::string int_list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

int SubcaseTuple::digit(int i, int j) const {
  if (j < 1 || j > static_cast<int>(d.size()) || i < 1 || i >= c[j - 1])
    throw InvalidInput("no digit for row " + std::to_string(i) + ", column " + std::to_string(j));
  return static_cast<int>((d[j - 1] / pow3(i - 1)) % 3);
}

bool SubcaseTuple::complete() const {
  const std::size_t pairs = static_cast<std::size_t>(r) * (r - 1) / 2;
  return a.size() == pairs && b.size() == pairs && static_cast<int>(c.size()) == t - 1 &&
         static_cast<int>(d.size()) == t - 1;
}

std::string SubcaseTuple::to_string() const {
  return "a=" + pair_list(a) + "; b=" + pair_list(b) + "; c=" + int_list(c) + "; d=" + int_list(d);
}

nlohmann::json SubcaseTuple::to_json() const {
  auto pairs = [](const std::map<std::pair<int, int>, int>& m) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [key, v] : m)
      out.push_back({{"i", key.first}, {"j", key.second}, {"value", v}});
    return out;
  };
  return {{"t", t}, {"r", r}, {"a", pairs(a)}, {"b", pairs(b)}, {"c", c}, {"d", d}};
}

std::vector<std::string> tuple_violations(const SubcaseTuple& tp) {
  std::vector<std::string> out;
  if (tp.t < 2)
    out.push_back("t must be at least 2");
  if (tp.r < 1)
    out.push_back("r must be at least 1");
  auto valid_pair = [&](std::pair<int, int> p) { return 1 <= p.first && p.first < p.second && p.second <= tp.r; };
  for (const auto& [p, v] : tp.a) {
    if (!valid_pair(p))
      out.push_back("a has an invalid pair");
    else if (v < 1 || v >= tp.t)
      out.push_back("a" + std::to_string(p.first) + std::to_string(p.second) + " outside [1, t)");
  }
  for (const auto& [p, v] : tp.b) {
    auto it = tp.a.find(p);
    if (!valid_pair(p) || it == tp.a.end())
      out.push_back("b given without a matching a");
    else if (v <= it->second || v > tp.t)
      out.push_back("b" + std::to_string(p.first) + std::to_string(p.second) + " outside (a, t]");
  }
  for (const auto& [p, v] : tp.a) {
    auto next_col = tp.a.find({p.first, p.second + 1});
    if (next_col != tp.a.end() && next_col->second > v)
      out.push_back("a is not monotone along row " + std::to_string(p.first));
    auto next_row = tp.a.find({p.first + 1, p.second});
    if (p.first + 1 < p.second && next_row != tp.a.end() && next_row->second < v)
      out.push_back("a is not monotone along column " + std::to_string(p.second));
  }
  if (static_cast<int>(tp.c.size()) > tp.t - 1)
    out.push_back("too many c entries");
  if (tp.d.size() > tp.c.size())
    out.push_back("d given without c");
  for (std::size_t j = 0; j < tp.c.size(); ++j) {
    if (tp.c[j] < 1 || tp.c[j] > tp.r)
      out.push_back("c" + std::to_string(j + 1) + " outside [1, r]");
    else if (j < tp.d.size() && (tp.d[j] < 0 || tp.d[j] >= pow3(tp.c[j] - 1)))
      out.push_back("d" + std::to_string(j + 1) + " outside [0, 3^(c-1))");
  }
  return out;
}

SubcaseTuple parse_subcase_tuple(std::string_view text, int t, int r) {
  SubcaseTuple tp;
  tp.t = t;
  tp.r = r;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void {
    throw InvalidInput("tuple parse error at offset " + std::to_string(pos) + ": " + what);
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto expect = [&](char ch) {
    skip();
    if (pos >= text.size() || text[pos] != ch)
      fail(std::string("expected '") + ch + "'");
    ++pos;
  };
  auto accept = [&](char ch) {
    skip();
    if (pos < text.size() && text[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  };
  auto number = [&] {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (start == pos)
      fail("expected a number");
    return std::stoi(std::string(text.substr(start, pos - start)));
  };
  auto pairs = [&](char name, std::map<std::pair<int, int>, int>& out) {
    expect(name);
    expect('=');
    expect('[');
    if (accept(']'))
      return;
    do {
      expect('(');
      int i = number();
      expect(',');
      int j = number();
      expect(')');
      expect(':');
      out[{i, j}] = number();
    } while (accept(','));
    expect(']');
  };
  auto ints = [&](char name, std::vector<int>& out) {
    expect(name);
    expect('=');
    expect('[');
    if (accept(']'))
      return;
    do
      out.push_back(number());
    while (accept(','));
    expect(']');
  };
  pairs('a', tp.a);
  expect(';');
  pairs('b', tp.b);
  expect(';');
  ints('c', tp.c);
  expect(';');
  ints('d', tp.d);
  skip();
  if (pos != text.size())
    fail("trailing characters");
  auto problems = tuple_violations(tp);
  if (!problems.empty())
    throw InvalidInput("invalid tuple: " + problems.front());
  return tp;
}

RationalLinearSystem subcase_system(const SubcaseTuple& tp, std::optional<int> n) {
  auto problems = tuple_violations(tp);
  if (!problems.empty())
    throw InvalidInput("invalid tuple: " + problems.front());
  const int t = tp.t, r = tp.r;
  RationalLinearSystem s;
  int nvar = -1;
  if (!n)
    nvar = s.add_variable("n", t, std::nullopt);
  std::optional<long> cap;
  if (n)
    cap = *n;
  std::vector<int> nj(t + 1);
  for (int j = 1; j <= t; ++j)
    nj[j] = s.add_variable("n_" + std::to_string(j), 1, cap);
  std::vector<std::vector<int>> m(r + 1, std::vector<int>(t + 1));
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= t; ++j)
      m[i][j] = s.add_variable("m_" + std::to_string(i) + "_" + std::to_string(j), 0, cap);

  std::vector<Term> total;
  for (int j = 1; j <= t; ++j)
    total.push_back({nj[j], 1});
  if (n) {
    s.add_constraint(total, Relation::Equal, *n, "voters");
  } else {
    total.push_back({nvar, -1});
    s.add_constraint(total, Relation::Equal, 0, "voters");
  }
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= t; ++j)
      s.add_constraint({{m[i][j], 1}, {nj[j], -1}}, Relation::LessEq, 0, "cap");

  auto prefix_diff = [&](int i, int j, int k) {
    std::vector<Term> terms;
    for (int h = 1; h <= k; ++h) {
      terms.push_back({m[i][h], 1});
      terms.push_back({m[j][h], -1});
    }
    return terms;
  };
  for (const auto& [p, av] : tp.a) {
    const auto [i, j] = p;
    for (int k = 1; k < av; ++k)
      s.add_constraint(prefix_diff(i, j, k), Relation::Equal, 0, "equal_prefix");
    s.add_constraint(prefix_diff(i, j, av), Relation::GreaterEq, 1, "first_difference");
    auto bit = tp.b.find(p);
    if (bit == tp.b.end())
      continue;
    for (int k = av + 1; k < bit->second; ++k)
      s.add_constraint(prefix_diff(i, j, k), Relation::GreaterEq, 0, "ahead");
    s.add_constraint(prefix_diff(i, j, bit->second), Relation::LessEq, -1, "overtaken");
  }
  for (std::size_t jj = 0; jj < tp.c.size(); ++jj) {
    const int j = static_cast<int>(jj) + 1;
    const int cj = tp.c[jj];
    s.add_constraint({{m[cj][j], 1}}, Relation::GreaterEq, 1, "column_row");
    s.add_constraint({{m[cj][j + 1], 1}, {nj[j + 1], -1}}, Relation::LessEq, -1, "column_row");
    if (jj >= tp.d.size())
      continue;
    for (int i = 1; i < cj; ++i) {
      const int dig = tp.digit(i, j);
      if (dig == 1)
        s.add_constraint({{m[i][j], 1}}, Relation::GreaterEq, 1, "digit");
      else
        s.add_constraint({{m[i][j], 1}}, Relation::Equal, 0, "digit");
      if (dig == 0)
        s.add_constraint({{m[i][j + 1], 1}, {nj[j + 1], -1}}, Relation::LessEq, -1, "digit");
      else
        s.add_constraint({{m[i][j + 1], 1}, {nj[j + 1], -1}}, Relation::Equal, 0, "digit");
    }
  }
  return s;
}

namespace {

// One assignment step of the search: an a or b entry of a pair, or the
// (c, d) pair of a column.
struct Step {
  enum Kind { A, B, Column } kind;
  std::pair<int, int> pair;
  int column = 0;
};

std::vector<Step> search_steps(int t, int r) {
  std::vector<Step> steps;
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j)
      steps.push_back({Step::A, {i, j}});
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j)
      steps.push_back({Step::B, {i, j}});
  for (int j = 1; j < t; ++j)
    steps.push_back({Step::Column, {}, j});
  return steps;
}

std::vector<SubcaseTuple> choices(const SubcaseTuple& tp, const Step& step) {
  std::vector<SubcaseTuple> out;
  if (step.kind == Step::A) {
    int lo = 1, hi = tp.t - 1;
    auto left = tp.a.find({step.pair.first, step.pair.second - 1});
    if (left != tp.a.end())
      hi = std::min(hi, left->second);
    auto up = tp.a.find({step.pair.first - 1, step.pair.second});
    if (up != tp.a.end())
      lo = std::max(lo, up->second);
    for (int v = lo; v <= hi; ++v) {
      out.push_back(tp);
      out.back().a[step.pair] = v;
    }
  } else if (step.kind == Step::B) {
    for (int v = tp.a.at(step.pair) + 1; v <= tp.t; ++v) {
      out.push_back(tp);
      out.back().b[step.pair] = v;
    }
  } else {
    for (int cj = 1; cj <= tp.r; ++cj)
      for (long dj = 0; dj < pow3(cj - 1); ++dj) {
        out.push_back(tp);
        out.back().c.push_back(cj);
        out.back().d.push_back(static_cast<int>(dj));
      }
  }
  return out;
}

bool relaxation_open(const SubcaseTuple& tp, const SubcaseOptions& options) {
  return rational_feasibility(subcase_system(tp), options.fourier_motzkin) != Feasibility::Infeasible;
}

bool certified(const SubcaseTuple& tp, int probe) {
  for (int n = tp.t; n <= probe; ++n)
    if (count_lattice_points(subcase_system(tp, n), {.propagate = true, .limit = 1}) > 0)
      return true;
  return false;
}

void search(const SubcaseTuple& tp, const std::vector<Step>& steps, std::size_t depth,
            const SubcaseOptions& options, int probe, std::vector<SubcaseTuple>& out) {
  if (depth == steps.size()) {
    if (certified(tp, probe))
      out.push_back(tp);
    return;
  }
  for (auto& next : choices(tp, steps[depth]))
    if (relaxation_open(next, options))
      search(next, steps, depth + 1, options, probe, out);
}

}  // namespace

std::vector<SubcaseTuple> enumerate_subcases(int t, int r, const SubcaseOptions& options) {
  if (t < 2)
    throw InvalidInput("sub-cases need t >= 2");
  if (r < 1)
    throw InvalidInput("sub-cases need r >= 1");
  const int probe = options.probe > 0 ? options.probe : 3 * (t + r);
  SubcaseTuple root;
  root.t = t;
  root.r = r;
  const auto steps = search_steps(t, r);
  const auto first = choices(root, steps.front());
  std::vector<std::vector<SubcaseTuple>> per_task(first.size());
  parallel_for(static_cast<int>(first.size()), options.jobs, [&](int i) {
    if (relaxation_open(first[i], options))
      search(first[i], steps, 1, options, probe, per_task[i]);
  });
  std::vector<SubcaseTuple> out;
  for (auto& part : per_task)
    out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end());
  return out;
}

SubcaseTuple classify_game(const TypedGame& g) {
  const int t = g.types();
  const int r = g.num_rows();
  if (t < 2)
    throw InvalidInput("classification needs t >= 2");
  const auto problems = validate(g);
  if (!problems.empty())
    throw InvalidInput("classification needs a valid game");
  const auto& rows = g.rows();
  const auto& sizes = g.class_sizes();
  std::vector<std::vector<int>> ps(r, std::vector<int>(t));
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < t; ++k)
      ps[i][k] = rows[i][k] + (k ? ps[i][k - 1] : 0);
  SubcaseTuple tp;
  tp.t = t;
  tp.r = r;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      int a = 0;
      while (ps[i][a] == ps[j][a])
        ++a;
      int b = a + 1;
      while (ps[j][b] <= ps[i][b])
        ++b;
      tp.a[{i + 1, j + 1}] = a + 1;
      tp.b[{i + 1, j + 1}] = b + 1;
    }
  for (int j = 0; j + 1 < t; ++j) {
    int cj = 0;
    while (!(rows[cj][j] > 0 && rows[cj][j + 1] < sizes[j + 1]))
      ++cj;
    int dj = 0;
    for (int i = cj - 1; i >= 0; --i) {
      const int dig = rows[i][j] > 0 ? 1 : (rows[i][j + 1] == sizes[j + 1] ? 2 : 0);
      dj = dj * 3 + dig;
    }
    tp.c.push_back(cj + 1);
    tp.d.push_back(dj);
  }
  return tp;
}

std::vector<long> game_point(const TypedGame& g, const RationalLinearSystem& system) {
  std::vector<long> values;
  for (const auto& v : system.variables()) {
    if (v.name == "n") {
      values.push_back(g.voters());
      continue;
    }
    int i = 0, j = 0;
    if (std::sscanf(v.name.c_str(), "m_%d_%d", &i, &j) == 2)
      values.push_back(g.rows().at(i - 1).at(j - 1));
    else if (std::sscanf(v.name.c_str(), "n_%d", &j) == 1)
      values.push_back(g.class_sizes().at(j - 1));
    else
      throw InvalidInput("variable '" + v.name + "' is not a game coordinate");
  }
  return values;
}

}  // namespace csg

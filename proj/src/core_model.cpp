#include "csg/core_model.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "csg/errors.hpp"

namespace csg {

namespace {

void require_same_length(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size())
    throw InvalidInput("profiles of different length (" + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()) + ")");
}

}  // namespace

Comparison compare_partial_sum(std::span<const int> a, std::span<const int> b) {
  require_same_length(a, b);
  long sa = 0, sb = 0;
  bool a_below = true, b_below = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    if (sa > sb)
      a_below = false;
    if (sb > sa)
      b_below = false;
  }
  if (a_below && b_below)
    return Comparison::Equal;
  if (a_below)
    return Comparison::LessEq;
  if (b_below)
    return Comparison::GreaterEq;
  return Comparison::Incomparable;
}

LexOrder compare_lex(std::span<const int> a, std::span<const int> b) {
  require_same_length(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i])
      return LexOrder::Greater;
    if (a[i] < b[i])
      return LexOrder::Less;
  }
  return LexOrder::Equal;
}

TypedGame::TypedGame(std::vector<int> class_sizes, std::vector<CoalitionProfile> rows)
    : class_sizes_(std::move(class_sizes)), rows_(std::move(rows)) {
  if (class_sizes_.empty())
    throw InvalidInput("a game needs at least one voter class");
  if (rows_.empty())
    throw InvalidInput("a game needs at least one shift-minimal winning coalition");
  for (const auto& row : rows_)
    if (row.size() != class_sizes_.size())
      throw InvalidInput("matrix row of length " + std::to_string(row.size()) + " for t = " +
                         std::to_string(class_sizes_.size()));
  std::sort(rows_.begin(), rows_.end(), std::greater<>());
  voters_ = std::accumulate(class_sizes_.begin(), class_sizes_.end(), 0);
}

std::vector<Violation> validate(const TypedGame& game) {
  std::vector<Violation> out;
  const auto& sizes = game.class_sizes();
  const auto& rows = game.rows();
  const int t = game.types();
  const int r = game.num_rows();

  for (int j = 0; j < t; ++j)
    if (sizes[j] < 1)
      out.push_back({Property::ClassSize, {j}});

  for (int i = 0; i < r; ++i)
    for (int j = 0; j < t; ++j)
      if (rows[i][j] < 0 || rows[i][j] > sizes[j])
        out.push_back({Property::EntryBounds, {i, j}});

  for (int i = 0; i < r; ++i)
    for (int k = i + 1; k < r; ++k)
      if (compare_partial_sum(rows[i], rows[k]) != Comparison::Incomparable)
        out.push_back({Property::Comparable, {i, k}});

  if (t == 1) {
    if (rows[0][0] <= 0)
      out.push_back({Property::ColumnCondition, {0}});
  } else {
    for (int j = 0; j + 1 < t; ++j) {
      bool ok = std::any_of(rows.begin(), rows.end(), [&](const CoalitionProfile& row) {
        return row[j] > 0 && row[j + 1] < sizes[j + 1];
      });
      if (!ok)
        out.push_back({Property::ColumnCondition, {j}});
    }
  }

  for (int i = 0; i + 1 < r; ++i)
    if (compare_lex(rows[i], rows[i + 1]) != LexOrder::Greater)
      out.push_back({Property::LexOrder, {i, i + 1}});
  return out;
}

Outcome classify_profile(const TypedGame& game, std::span<const int> profile) {
  const auto& sizes = game.class_sizes();
  if (profile.size() != sizes.size())
    throw InvalidInput("profile length " + std::to_string(profile.size()) + " does not match t = " +
                       std::to_string(sizes.size()));
  for (std::size_t j = 0; j < sizes.size(); ++j)
    if (profile[j] < 0 || profile[j] > sizes[j])
      throw InvalidInput("profile entry " + std::to_string(j + 1) + " outside [0, " +
                         std::to_string(sizes[j]) + "]");
  for (const auto& row : game.rows())
    if (leq_partial_sum(row, profile))
      return Outcome::Winning;
  return Outcome::Losing;
}

std::vector<CoalitionProfile> all_profiles(std::span<const int> class_sizes) {
  std::vector<CoalitionProfile> out;
  CoalitionProfile current(class_sizes.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == class_sizes.size()) {
      out.push_back(current);
      return;
    }
    for (int v = class_sizes[j]; v >= 0; --v) {
      current[j] = v;
      rec(j + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<CoalitionProfile> shift_maximal_losing(const TypedGame& game) {
  auto profiles = all_profiles(game.class_sizes());
  std::vector<bool> winning(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i)
    winning[i] = classify_profile(game, profiles[i]) == Outcome::Winning;

  std::vector<CoalitionProfile> out;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (winning[i])
      continue;
    bool maximal = true;
    for (std::size_t k = 0; k < profiles.size() && maximal; ++k)
      if (k != i && !winning[k] &&
          compare_partial_sum(profiles[i], profiles[k]) == Comparison::LessEq)
        maximal = false;
    if (maximal)
      out.push_back(profiles[i]);
  }
  return out;
}

BinaryCoalition::BinaryCoalition(std::vector<int> bits) : bits_(std::move(bits)) {
  if (bits_.empty())
    throw InvalidInput("binary coalition of length 0");
  for (int b : bits_)
    if (b != 0 && b != 1)
      throw InvalidInput("binary coalition entries must be 0 or 1");
}

BinaryCoalition BinaryCoalition::from_string(std::string_view text) {
  std::vector<int> bits;
  for (char c : text) {
    if (c != '0' && c != '1')
      throw InvalidInput("not a 0/1 string: '" + std::string(text) + "'");
    bits.push_back(c - '0');
  }
  return BinaryCoalition(std::move(bits));
}

BinaryCoalition BinaryCoalition::from_vertex(int n, std::uint64_t vertex) {
  if (n < 1 || n > 63)
    throw InvalidInput("vertex numbering supports 1 <= n <= 63");
  std::vector<int> bits(n);
  for (int p = 0; p < n; ++p)
    bits[p] = static_cast<int>((vertex >> (n - 1 - p)) & 1U);
  return BinaryCoalition(std::move(bits));
}

bool BinaryCoalition::is_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](int b) { return b == 0; });
}

std::uint64_t BinaryCoalition::vertex() const {
  if (bits_.size() > 63)
    throw InvalidInput("vertex numbering supports n <= 63");
  std::uint64_t v = 0;
  for (int b : bits_)
    v = (v << 1) | static_cast<std::uint64_t>(b);
  return v;
}

std::string BinaryCoalition::to_string() const {
  std::string s;
  for (int b : bits_)
    s.push_back(static_cast<char>('0' + b));
  return s;
}

std::vector<BinaryCoalition> typed_to_binary(const TypedGame& game) {
  std::vector<BinaryCoalition> out;
  const auto& sizes = game.class_sizes();
  for (const auto& row : game.rows()) {
    std::vector<int> bits;
    bits.reserve(game.voters());
    for (std::size_t j = 0; j < sizes.size(); ++j) {
      bits.insert(bits.end(), sizes[j] - row[j], 0);
      bits.insert(bits.end(), row[j], 1);
    }
    out.emplace_back(std::move(bits));
  }
  return out;
}

TypedGame binary_to_typed(std::span<const BinaryCoalition> antichain, int n) {
  if (antichain.empty())
    throw InvalidInput("empty set of coalitions does not describe a game");
  for (const auto& v : antichain) {
    if (v.size() != n)
      throw InvalidInput("coalition " + v.to_string() + " does not have length " +
                         std::to_string(n));
    if (v.is_zero())
      throw InvalidInput("the empty coalition cannot be winning");
  }
  for (std::size_t i = 0; i < antichain.size(); ++i)
    for (std::size_t k = i + 1; k < antichain.size(); ++k)
      if (compare_partial_sum(antichain[i].bits(), antichain[k].bits()) !=
          Comparison::Incomparable)
        throw InvalidInput("coalitions " + antichain[i].to_string() + " and " +
                           antichain[k].to_string() + " are comparable");

  std::vector<int> sizes;
  int run = 1;
  for (int p = 0; p + 1 < n; ++p) {
    bool boundary = std::any_of(antichain.begin(), antichain.end(), [&](const BinaryCoalition& v) {
      return v.bits()[p] == 1 && v.bits()[p + 1] == 0;
    });
    if (boundary) {
      sizes.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  sizes.push_back(run);

  std::vector<CoalitionProfile> rows;
  for (const auto& v : antichain) {
    CoalitionProfile row;
    int pos = 0;
    for (int size : sizes) {
      row.push_back(std::accumulate(v.bits().begin() + pos, v.bits().begin() + pos + size, 0));
      pos += size;
    }
    rows.push_back(std::move(row));
  }
  return TypedGame(std::move(sizes), std::move(rows));
}

BigInt max_shift_minimal(int n) {
  if (n < 1)
    throw InvalidInput("max_shift_minimal needs n >= 1");
  // subset-sum counts of {1..n}: coefficients of prod (1 + q^i)
  std::vector<BigInt> ways(static_cast<std::size_t>(n) * (n + 1) / 2 + 1, 0);
  ways[0] = 1;
  long top = 0;
  for (int part = 1; part <= n; ++part) {
    top += part;
    for (long s = top; s >= part; --s)
      ways[s] += ways[s - part];
  }
  BigInt best = 0;
  for (std::size_t s = 1; s < ways.size(); ++s)
    if (ways[s] > best)
      best = ways[s];
  return best;
}

int T2Decomposition::voters() const {
  int n = 3 * (num_rows() - 1) + z1 + z2;
  for (int v : x)
    n += 2 * v;
  for (int v : y)
    n += v;
  return n;
}

TypedGame t2_compose(const T2Decomposition& d) {
  const int r = static_cast<int>(d.x.size());  // last row index; R = r + 1 rows
  if (r < 1)
    throw InvalidInput("t2_compose needs at least two rows (x non-empty)");
  if (static_cast<int>(d.y.size()) != r + 2)
    throw InvalidInput("t2_compose: y must have exactly one more entry than there are rows");
  auto negative = [](int v) { return v < 0; };
  if (std::any_of(d.x.begin(), d.x.end(), negative) ||
      std::any_of(d.y.begin(), d.y.end(), negative) || d.z1 < 0 || d.z2 < 0)
    throw InvalidInput("t2_compose: all components must be non-negative");

  const int sum_x = std::accumulate(d.x.begin(), d.x.end(), 0);
  const int y_last = d.y[r + 1];
  std::vector<CoalitionProfile> rows;
  for (int i = 0; i <= r; ++i) {
    int first = r - i + y_last;
    for (int j = i; j < r; ++j)
      first += d.x[j];
    int second = 2 * i;
    for (int j = 0; j < i; ++j)
      second += d.x[j];
    for (int j = 0; j <= i; ++j)
      second += d.y[j];
    rows.push_back({first, second});
  }
  const int n1 = r + sum_x + y_last + d.z1;
  int n2 = 2 * r + sum_x + d.z2;
  for (int j = 0; j <= r; ++j)
    n2 += d.y[j];
  return TypedGame({n1, n2}, std::move(rows));
}

T2Decomposition t2_decompose(const TypedGame& game) {
  if (game.types() != 2)
    throw InvalidInput("t2_decompose requires t = 2");
  if (game.num_rows() < 2)
    throw InvalidInput("t2_decompose requires at least two rows");
  const auto& m = game.rows();
  const int r = game.num_rows() - 1;
  T2Decomposition d;
  d.x.assign(r, 0);
  d.y.assign(r + 2, 0);
  d.y[0] = m[0][1];
  d.y[r + 1] = m[r][0];
  for (int i = r - 1; i >= 0; --i)
    d.x[i] = m[i][0] - m[i + 1][0] - 1;
  for (int i = 1; i <= r; ++i)
    d.y[i] = m[i][1] - m[i - 1][1] - 2 - d.x[i - 1];
  const int sum_x = std::accumulate(d.x.begin(), d.x.end(), 0);
  d.z1 = game.class_sizes()[0] - r - sum_x - d.y[r + 1];
  d.z2 = game.class_sizes()[1] - 2 * r - sum_x;
  for (int j = 0; j <= r; ++j)
    d.z2 -= d.y[j];

  auto negative = [](int v) { return v < 0; };
  if (std::any_of(d.x.begin(), d.x.end(), negative) ||
      std::any_of(d.y.begin(), d.y.end(), negative) || d.z1 < 0 || d.z2 < 0)
    throw InvalidInput("t2_decompose: input is not a valid two-type game");
  return d;
}

}  // namespace csg

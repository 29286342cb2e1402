#include "csg/enumeration.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

#include "csg/errors.hpp"
#include "csg/parallel.hpp"

namespace csg {

namespace {

int words_for(int bits) { return (bits + 63) / 64; }

bool vertex_leq(int n, std::uint64_t u, std::uint64_t v) {
  int su = 0, sv = 0;
  for (int p = n - 1; p >= 0; --p) {
    su += static_cast<int>((u >> p) & 1U);
    sv += static_cast<int>((v >> p) & 1U);
    if (su > sv)
      return false;
  }
  return true;
}

// Vertices sorted by decreasing rank, where rank(v) = sum of prefix sums is a
// linear extension of the partial-sum order. `later_inc[p]` holds the
// positions after p that are incomparable with p.
struct PosetIndex {
  int n = 0;
  int size = 0;
  int words = 0;
  std::vector<std::uint64_t> vertex;
  std::vector<std::uint32_t> boundary;
  std::vector<std::uint64_t> later_inc;
};

PosetIndex build_index(int n) {
  PosetIndex idx;
  idx.n = n;
  idx.size = static_cast<int>((std::uint64_t{1} << n) - 1);
  idx.words = words_for(idx.size);
  auto rank = [n](std::uint64_t v) {
    int r = 0;
    for (int p = 0; p < n; ++p)
      r += static_cast<int>((v >> (n - 1 - p)) & 1U) * (n - p);
    return r;
  };
  for (std::uint64_t v = 1; v <= static_cast<std::uint64_t>(idx.size); ++v)
    idx.vertex.push_back(v);
  std::sort(idx.vertex.begin(), idx.vertex.end(), [&](std::uint64_t a, std::uint64_t b) {
    int ra = rank(a), rb = rank(b);
    return ra != rb ? ra > rb : a > b;
  });
  const std::uint32_t low_bits = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  for (auto v : idx.vertex) {
    auto bits = static_cast<std::uint32_t>(v);
    idx.boundary.push_back(bits & ~(bits << 1) & ~std::uint32_t{1} & low_bits);
  }
  idx.later_inc.assign(static_cast<std::size_t>(idx.size) * idx.words, 0);
  for (int p = 0; p < idx.size; ++p)
    for (int q = p + 1; q < idx.size; ++q)
      if (!vertex_leq(n, idx.vertex[p], idx.vertex[q]) &&
          !vertex_leq(n, idx.vertex[q], idx.vertex[p]))
        idx.later_inc[static_cast<std::size_t>(p) * idx.words + q / 64] |= std::uint64_t{1}
                                                                           << (q % 64);
  return idx;
}

template <int W>
struct AntichainCounter {
  const std::uint64_t* later_inc;

  // Number of nonempty antichains whose elements all come from `cand`.
  std::uint64_t count(const std::array<std::uint64_t, W>& cand) const {
    std::uint64_t total = 0;
    for (int w = 0; w < W; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        const int p = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        total += 1;
        std::array<std::uint64_t, W> next{};
        int pop = 0;
        const std::uint64_t* row = later_inc + static_cast<std::size_t>(p) * W;
        for (int k = w; k < W; ++k) {
          next[k] = cand[k] & row[k];
          pop += std::popcount(next[k]);
        }
        if (pop == 1)
          total += 1;
        else if (pop > 1)
          total += count(next);
      }
    }
    return total;
  }
};

template <int W>
struct AntichainTabulator {
  const PosetIndex& idx;
  std::vector<std::uint64_t>& counts;  // (t, r) flattened, stride idx.size + 1
  int stride;

  void visit(const std::array<std::uint64_t, W>& cand, int depth, std::uint32_t boundary) {
    const std::uint64_t* later = idx.later_inc.data();
    for (int w = 0; w < W; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        const int p = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        const std::uint32_t b = boundary | idx.boundary[p];
        const int t = std::popcount(b) + 1;
        counts[static_cast<std::size_t>(t) * stride + depth + 1] += 1;
        std::array<std::uint64_t, W> next{};
        bool any = false;
        const std::uint64_t* row = later + static_cast<std::size_t>(p) * W;
        for (int k = w; k < W; ++k) {
          next[k] = cand[k] & row[k];
          any |= next[k] != 0;
        }
        if (any)
          visit(next, depth + 1, b);
      }
    }
  }
};

template <int W>
std::array<std::uint64_t, W> row_array(const PosetIndex& idx, int p) {
  std::array<std::uint64_t, W> a{};
  std::copy_n(idx.later_inc.begin() + static_cast<std::ptrdiff_t>(p) * W, W, a.begin());
  return a;
}

template <int W>
BigInt count_with_width(const PosetIndex& idx, int jobs) {
  AntichainCounter<W> counter{idx.later_inc.data()};
  std::vector<std::uint64_t> per_task(idx.size, 0);
  parallel_for(idx.size, jobs, [&](int p) {
    auto cand = row_array<W>(idx, p);
    bool any = std::any_of(cand.begin(), cand.end(), [](std::uint64_t w) { return w != 0; });
    per_task[p] = 1 + (any ? counter.count(cand) : 0);
  });
  BigInt total = 0;
  for (auto c : per_task)
    total += c;
  return total;
}

template <int W>
Tabulation tabulate_with_width(const PosetIndex& idx, int jobs) {
  const int stride = idx.size + 1;
  std::vector<std::vector<std::uint64_t>> per_task(idx.size);
  parallel_for(idx.size, jobs, [&](int p) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(idx.n + 1) * stride, 0);
    AntichainTabulator<W> tab{idx, counts, stride};
    const std::uint32_t b = idx.boundary[p];
    counts[static_cast<std::size_t>(std::popcount(b) + 1) * stride + 1] += 1;
    auto cand = row_array<W>(idx, p);
    if (std::any_of(cand.begin(), cand.end(), [](std::uint64_t w) { return w != 0; }))
      tab.visit(cand, 1, b);
    per_task[p] = std::move(counts);
  });
  Tabulation out(idx.n);
  for (int t = 1; t <= idx.n; ++t)
    for (int r = 1; r < stride; ++r) {
      BigInt sum = 0;
      for (const auto& counts : per_task)
        sum += counts[static_cast<std::size_t>(t) * stride + r];
      if (sum != 0)
        out.add(t, r, sum);
    }
  return out;
}

void check_n(int n, int limit, const char* what) {
  if (n < 1)
    throw InvalidInput("n must be at least 1");
  if (n > limit)
    throw ResourceLimit(std::string(what) + " is limited to n <= " + std::to_string(limit) +
                        " (the number of games grows doubly exponentially); requested n = " +
                        std::to_string(n));
}

}  // namespace

ComparabilityGraph::ComparabilityGraph(int n) : n_(n) {
  if (n < 1 || n > 12)
    throw InvalidInput("comparability graph supports 1 <= n <= 12");
  const int size = vertex_count();
  words_ = words_for(size);
  adjacency_.assign(static_cast<std::size_t>(size) * words_, 0);
  for (std::uint64_t u = 1; u <= static_cast<std::uint64_t>(size); ++u)
    for (std::uint64_t v = u + 1; v <= static_cast<std::uint64_t>(size); ++v)
      if (vertex_leq(n, u, v) || vertex_leq(n, v, u)) {
        adjacency_[(u - 1) * words_ + (v - 1) / 64] |= std::uint64_t{1} << ((v - 1) % 64);
        adjacency_[(v - 1) * words_ + (u - 1) / 64] |= std::uint64_t{1} << ((u - 1) % 64);
      }
}

bool ComparabilityGraph::adjacent(std::uint64_t u, std::uint64_t v) const {
  return (row(u)[(v - 1) / 64] >> ((v - 1) % 64)) & 1U;
}

std::span<const std::uint64_t> ComparabilityGraph::row(std::uint64_t v) const {
  if (v < 1 || v > static_cast<std::uint64_t>(vertex_count()))
    throw InvalidInput("vertex id out of range");
  return {adjacency_.data() + (v - 1) * words_, static_cast<std::size_t>(words_)};
}

int ComparabilityGraph::degree(std::uint64_t v) const {
  int d = 0;
  for (auto w : row(v))
    d += std::popcount(w);
  return d;
}

void Tabulation::add(int t, int r, const BigInt& count) {
  if (count == 0)
    return;
  counts_[{t, r}] += count;
}

BigInt Tabulation::count(int t, int r) const {
  auto it = counts_.find({t, r});
  return it == counts_.end() ? BigInt(0) : it->second;
}

BigInt Tabulation::count_types(int t) const {
  BigInt sum = 0;
  for (const auto& [key, c] : counts_)
    if (key.first == t)
      sum += c;
  return sum;
}

BigInt Tabulation::total() const {
  BigInt sum = 0;
  for (const auto& [key, c] : counts_)
    sum += c;
  return sum;
}

int Tabulation::max_rows() const {
  int best = 0;
  for (const auto& [key, c] : counts_)
    best = std::max(best, key.second);
  return best;
}

BigInt count_all_games(int n, const EnumerationOptions& options) {
  check_n(n, options.limits.count_max_n, "antichain counting");
  const PosetIndex idx = build_index(n);
  switch (idx.words) {
    case 1: return count_with_width<1>(idx, options.jobs);
    case 2: return count_with_width<2>(idx, options.jobs);
    case 4: return count_with_width<4>(idx, options.jobs);
    case 8: return count_with_width<8>(idx, options.jobs);
    case 16: return count_with_width<16>(idx, options.jobs);
    default: throw ResourceLimit("antichain counting supports n <= 10");
  }
}

Tabulation tabulate_games(int n, const EnumerationOptions& options) {
  check_n(n, options.limits.classify_max_n, "antichain classification");
  const PosetIndex idx = build_index(n);
  switch (idx.words) {
    case 1: return tabulate_with_width<1>(idx, options.jobs);
    case 2: return tabulate_with_width<2>(idx, options.jobs);
    case 4: return tabulate_with_width<4>(idx, options.jobs);
    case 8: return tabulate_with_width<8>(idx, options.jobs);
    case 16: return tabulate_with_width<16>(idx, options.jobs);
    default: throw ResourceLimit("antichain classification supports n <= 10");
  }
}

void for_each_antichain(int n, const std::function<void(std::span<const std::uint64_t>)>& visit) {
  check_n(n, 6, "explicit antichain listing");
  const PosetIndex idx = build_index(n);
  std::vector<std::uint64_t> chosen;
  std::function<void(std::uint64_t)> rec = [&](std::uint64_t cand) {
    while (cand) {
      const int p = std::countr_zero(cand);
      cand &= cand - 1;
      chosen.push_back(idx.vertex[p]);
      visit(chosen);
      rec(cand & idx.later_inc[p]);
      chosen.pop_back();
    }
  };
  const std::uint64_t all = idx.size == 64 ? ~std::uint64_t{0}
                                           : (std::uint64_t{1} << idx.size) - 1;
  rec(all);
}

std::vector<std::vector<int>> compositions(int n, int t) {
  std::vector<std::vector<int>> out;
  if (t < 1 || n < t)
    return out;
  std::vector<int> parts(t);
  std::function<void(int, int)> rec = [&](int j, int remaining) {
    if (j == t - 1) {
      parts[j] = remaining;
      out.push_back(parts);
      return;
    }
    for (int v = 1; v <= remaining - (t - 1 - j); ++v) {
      parts[j] = v;
      rec(j + 1, remaining - v);
    }
  };
  rec(0, n);
  return out;
}

namespace {

// Shared, immutable search data for one vector of class sizes. Profiles are
// in lexicographically descending order so any antichain listed in index
// order is already a canonical matrix.
struct CompositionData {
  std::vector<int> sizes;
  std::vector<CoalitionProfile> profiles;
  int count = 0;
  int words = 0;
  int columns = 0;
  std::uint32_t full = 0;
  std::vector<std::uint32_t> column_mask;  // columns a profile satisfies
  std::vector<std::uint64_t> later_inc;    // count x words
  std::vector<std::uint64_t> column_set;   // columns x words

  explicit CompositionData(std::vector<int> class_sizes) : sizes(std::move(class_sizes)) {
    const int t = static_cast<int>(sizes.size());
    profiles = all_profiles(sizes);
    count = static_cast<int>(profiles.size());
    words = words_for(count);
    columns = t == 1 ? 1 : t - 1;
    full = (std::uint32_t{1} << columns) - 1;
    column_mask.assign(count, 0);
    column_set.assign(static_cast<std::size_t>(columns) * words, 0);
    for (int p = 0; p < count; ++p) {
      const auto& m = profiles[p];
      for (int j = 0; j < columns; ++j) {
        bool ok = t == 1 ? m[0] > 0 : (m[j] > 0 && m[j + 1] < sizes[j + 1]);
        if (ok) {
          column_mask[p] |= std::uint32_t{1} << j;
          column_set[static_cast<std::size_t>(j) * words + p / 64] |= std::uint64_t{1} << (p % 64);
        }
      }
    }
    std::vector<std::vector<int>> prefix(count, std::vector<int>(t));
    for (int p = 0; p < count; ++p)
      std::partial_sum(profiles[p].begin(), profiles[p].end(), prefix[p].begin());
    later_inc.assign(static_cast<std::size_t>(count) * words, 0);
    for (int p = 0; p < count; ++p)
      for (int q = p + 1; q < count; ++q) {
        bool p_above = false, q_above = false;
        for (int j = 0; j < t; ++j) {
          p_above |= prefix[p][j] > prefix[q][j];
          q_above |= prefix[q][j] > prefix[p][j];
        }
        if (p_above && q_above)
          later_inc[static_cast<std::size_t>(p) * words + q / 64] |= std::uint64_t{1} << (q % 64);
      }
  }
};

enum class SearchMode { Visit, Count, CountByRows };

class TypedSearch {
 public:
  TypedSearch(const CompositionData& data, std::optional<int> rows, SearchMode mode,
              const std::function<void(const TypedGame&)>* visit)
      : d_(data), target_rows_(rows), mode_(mode), visit_(visit) {
    const int max_depth = rows ? *rows : data.count;
    stack_.assign(static_cast<std::size_t>(max_depth + 2) * data.words, 0);
    by_rows_.assign(static_cast<std::size_t>(data.count) + 2, 0);
  }

  void run_all() {
    std::uint64_t* root = slot(0);
    std::fill(root, root + d_.words, 0);
    for (int p = 0; p < d_.count; ++p)
      root[p / 64] |= std::uint64_t{1} << (p % 64);
    expand(0, 0);
  }

  void run_first(int p) {
    chosen_.assign(1, p);
    std::uint64_t* cand = slot(1);
    const std::uint64_t* row = d_.later_inc.data() + static_cast<std::size_t>(p) * d_.words;
    std::copy(row, row + d_.words, cand);
    node(1, d_.column_mask[p]);
  }

  std::uint64_t count() const { return count_; }
  const std::vector<std::uint64_t>& by_rows() const { return by_rows_; }

 private:
  std::uint64_t* slot(int depth) { return stack_.data() + static_cast<std::size_t>(depth) * d_.words; }

  void emit(int depth) {
    ++count_;
    if (mode_ == SearchMode::CountByRows)
      ++by_rows_[depth];
    if (mode_ == SearchMode::Visit) {
      std::vector<CoalitionProfile> rows;
      rows.reserve(chosen_.size());
      for (int p : chosen_)
        rows.push_back(d_.profiles[p]);
      (*visit_)(TypedGame(d_.sizes, std::move(rows)));
    }
  }

  // `depth` rows are chosen; slot(depth) holds the remaining candidates.
  void node(int depth, std::uint32_t mask) {
    if (mask == d_.full && (!target_rows_ || depth == *target_rows_))
      emit(depth);
    if (target_rows_ && depth >= *target_rows_)
      return;
    expand(depth, mask);
  }

  void expand(int depth, std::uint32_t mask) {
    const std::uint64_t* cand = slot(depth);
    const std::uint32_t needed = d_.full & ~mask;
    // Every still-unsatisfied column needs some candidate that satisfies it.
    for (int j = 0; j < d_.columns; ++j)
      if ((needed >> j) & 1U) {
        const std::uint64_t* set = d_.column_set.data() + static_cast<std::size_t>(j) * d_.words;
        bool any = false;
        for (int w = 0; w < d_.words && !any; ++w)
          any = (cand[w] & set[w]) != 0;
        if (!any)
          return;
      }

    if (mode_ == SearchMode::Count && target_rows_ && depth + 1 == *target_rows_) {
      // Last row: it alone must cover the missing columns.
      for (int w = 0; w < d_.words; ++w) {
        std::uint64_t bits = cand[w];
        for (int j = 0; j < d_.columns; ++j)
          if ((needed >> j) & 1U)
            bits &= d_.column_set[static_cast<std::size_t>(j) * d_.words + w];
        count_ += static_cast<std::uint64_t>(std::popcount(bits));
      }
      return;
    }

    std::uint64_t* next = slot(depth + 1);
    for (int w = 0; w < d_.words; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        const int p = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        const std::uint64_t* row = d_.later_inc.data() + static_cast<std::size_t>(p) * d_.words;
        for (int k = 0; k < d_.words; ++k)
          next[k] = k < w ? 0 : cand[k] & row[k];
        chosen_.push_back(p);
        node(depth + 1, mask | d_.column_mask[p]);
        chosen_.pop_back();
      }
    }
  }

  const CompositionData& d_;
  std::optional<int> target_rows_;
  SearchMode mode_;
  const std::function<void(const TypedGame&)>* visit_;
  std::vector<std::uint64_t> stack_;
  std::vector<int> chosen_;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> by_rows_;
};

void check_typed_args(int n, int t, std::optional<int> r) {
  if (n < 1)
    throw InvalidInput("n must be at least 1");
  if (t < 1)
    throw InvalidInput("t must be at least 1");
  if (t > n)
    throw InvalidInput("t = " + std::to_string(t) + " exceeds n = " + std::to_string(n));
  if (r && *r < 1)
    throw InvalidInput("r must be at least 1");
}

struct TaskList {
  std::vector<CompositionData> data;
  std::vector<std::pair<int, int>> tasks;  // (composition, first row)

  TaskList(int n, int t) {
    for (auto& sizes : compositions(n, t))
      data.emplace_back(std::move(sizes));
    for (int c = 0; c < static_cast<int>(data.size()); ++c)
      for (int p = 0; p < data[c].count; ++p)
        tasks.emplace_back(c, p);
  }
};

}  // namespace

void enumerate_typed(int n, int t, std::optional<int> r,
                     const std::function<void(const TypedGame&)>& visit) {
  check_typed_args(n, t, r);
  for (auto& sizes : compositions(n, t)) {
    CompositionData data(std::move(sizes));
    TypedSearch search(data, r, SearchMode::Visit, &visit);
    search.run_all();
  }
}

BigInt count_typed(int n, int t, std::optional<int> r, const EnumerationOptions& options) {
  check_typed_args(n, t, r);
  TaskList list(n, t);
  std::vector<std::uint64_t> per_task(list.tasks.size(), 0);
  parallel_for(static_cast<int>(list.tasks.size()), options.jobs, [&](int i) {
    auto [c, p] = list.tasks[i];
    TypedSearch search(list.data[c], r, SearchMode::Count, nullptr);
    search.run_first(p);
    per_task[i] = search.count();
  });
  BigInt total = 0;
  for (auto c : per_task)
    total += c;
  return total;
}

Tabulation tabulate_typed(int n, const EnumerationOptions& options) {
  if (n < 1)
    throw InvalidInput("n must be at least 1");
  Tabulation out(n);
  for (int t = 1; t <= n; ++t) {
    TaskList list(n, t);
    std::vector<std::vector<std::uint64_t>> per_task(list.tasks.size());
    parallel_for(static_cast<int>(list.tasks.size()), options.jobs, [&](int i) {
      auto [c, p] = list.tasks[i];
      TypedSearch search(list.data[c], std::nullopt, SearchMode::CountByRows, nullptr);
      search.run_first(p);
      per_task[i] = search.by_rows();
    });
    std::map<int, BigInt> sums;
    for (const auto& counts : per_task)
      for (std::size_t rr = 0; rr < counts.size(); ++rr)
        if (counts[rr])
          sums[static_cast<int>(rr)] += counts[rr];
    for (const auto& [rr, c] : sums)
      out.add(t, rr, c);
  }
  return out;
}

}  // namespace csg

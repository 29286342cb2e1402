#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "csg/core_model.hpp"
#include "csg/numeric.hpp"

namespace csg {

/// Hard limits for the antichain engine. Growth is doubly exponential in n,
/// so these are configuration rather than constants.
struct EnumerationLimits {
  int count_max_n = 9;     // counting only
  int classify_max_n = 8;  // every antichain visited and classified by (t, r)
};

struct EnumerationOptions {
  int jobs = 1;
  EnumerationLimits limits;
};

/// Comparability graph on the nonzero 0/1 vectors of length n under the
/// partial-sum order. Vertex v (1 <= v < 2^n) is the vector whose binary
/// representation, voter 1 most significant, equals v; adjacency rows are
/// bit-packed with bit v-1 standing for vertex v.
class ComparabilityGraph {
 public:
  explicit ComparabilityGraph(int n);

  int voters() const { return n_; }
  int vertex_count() const { return static_cast<int>((std::uint64_t{1} << n_) - 1); }
  bool adjacent(std::uint64_t u, std::uint64_t v) const;
  std::span<const std::uint64_t> row(std::uint64_t v) const;
  int degree(std::uint64_t v) const;

 private:
  int n_;
  int words_;
  std::vector<std::uint64_t> adjacency_;
};

/// cs(n, t, r) counts; (t, r) pairs with a zero count are not stored.
class Tabulation {
 public:
  explicit Tabulation(int n = 0) : n_(n) {}

  int voters() const { return n_; }
  void add(int t, int r, const BigInt& count);
  BigInt count(int t, int r) const;
  BigInt count_types(int t) const;
  BigInt total() const;
  int max_rows() const;
  const std::map<std::pair<int, int>, BigInt>& counts() const { return counts_; }

  friend bool operator==(const Tabulation&, const Tabulation&) = default;

 private:
  int n_;
  std::map<std::pair<int, int>, BigInt> counts_;
};

/// Number of nonempty antichains of the partial-sum order on nonzero 0/1
/// vectors, i.e. cs(n). Throws ResourceLimit above limits.count_max_n.
BigInt count_all_games(int n, const EnumerationOptions& options = {});

/// Visits every antichain and buckets it by (t, r). Throws ResourceLimit above
/// limits.classify_max_n.
Tabulation tabulate_games(int n, const EnumerationOptions& options = {});

/// Calls `visit` with every antichain as a list of vertex ids. For testing and
/// small n only (n <= 6).
void for_each_antichain(int n, const std::function<void(std::span<const std::uint64_t>)>& visit);

/// Every game with n voters, t classes and, if given, r rows, each emitted
/// once in a deterministic order: compositions of n in lexicographic order,
/// then matrices by descending rows. Throws InvalidInput for t > n, t < 1 or
/// r < 1.
void enumerate_typed(int n, int t, std::optional<int> r,
                     const std::function<void(const TypedGame&)>& visit);

/// Count-only variant of enumerate_typed; may fan out over `options.jobs`.
BigInt count_typed(int n, int t, std::optional<int> r, const EnumerationOptions& options = {});

/// cs(n, t, r) for every t and r via the typed engine.
Tabulation tabulate_typed(int n, const EnumerationOptions& options = {});

/// Compositions of n into t positive parts, lexicographically ascending.
std::vector<std::vector<int>> compositions(int n, int t);

}  // namespace csg

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csg/numeric.hpp"

/// Complete simple games in their isomorph-free (class sizes, shift-minimal
/// winning matrix) form, together with the two vector orders the
/// representation is built on.
///
/// Voters are grouped into t classes of equally desirable voters, class 1
/// being the most desirable. A coalition is summarized by how many voters of
/// each class it contains (a profile). Profile `a` is below profile `b` in the
/// partial-sum order when every prefix sum of `a` is at most the matching
/// prefix sum of `b`; the game is the up-set generated by the matrix rows.
namespace csg {

using CoalitionProfile = std::vector<int>;

enum class Comparison { Equal, LessEq, GreaterEq, Incomparable };
enum class LexOrder { Less, Equal, Greater };
enum class Outcome { Losing, Winning };

/// Partial-sum (prefix dominance) comparison. Throws InvalidInput on a length
/// mismatch.
Comparison compare_partial_sum(std::span<const int> a, std::span<const int> b);

/// First differing coordinate decides. Throws InvalidInput on length mismatch.
LexOrder compare_lex(std::span<const int> a, std::span<const int> b);

inline bool leq_partial_sum(std::span<const int> a, std::span<const int> b) {
  auto c = compare_partial_sum(a, b);
  return c == Comparison::Equal || c == Comparison::LessEq;
}

class TypedGame {
 public:
  /// Rows are stored in lexicographically descending order regardless of the
  /// order given. Only the shape is checked here (t >= 1, at least one row,
  /// every row of length t); use validate() for the game conditions.
  TypedGame(std::vector<int> class_sizes, std::vector<CoalitionProfile> rows);

  const std::vector<int>& class_sizes() const { return class_sizes_; }
  const std::vector<CoalitionProfile>& rows() const { return rows_; }
  int types() const { return static_cast<int>(class_sizes_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int voters() const { return voters_; }

  friend bool operator==(const TypedGame&, const TypedGame&) = default;
  friend auto operator<=>(const TypedGame&, const TypedGame&) = default;

 private:
  std::vector<int> class_sizes_;
  std::vector<CoalitionProfile> rows_;
  int voters_ = 0;
};

/// Which of the validity conditions failed. Indices in a Violation are
/// 0-based: rows for EntryBounds (row, column), Comparable (row, row),
/// LexOrder (row, row+1); a column for ColumnCondition and ClassSize.
enum class Property {
  ClassSize,        // n_j >= 1
  EntryBounds,      // 0 <= m_ij <= n_j
  Comparable,       // rows must be pairwise incomparable
  ColumnCondition,  // some row with m_ij > 0 and m_i,j+1 < n_j+1 (t = 1: m_11 > 0)
  LexOrder,         // rows strictly decreasing lexicographically
};

struct Violation {
  Property property;
  std::vector<int> indices;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty result means the pair (class sizes, matrix) is a valid game.
std::vector<Violation> validate(const TypedGame& game);
inline bool is_valid(const TypedGame& game) { return validate(game).empty(); }

/// Winning iff some matrix row lies below `profile`. The profile must have
/// length t and respect the class sizes (InvalidInput otherwise).
Outcome classify_profile(const TypedGame& game, std::span<const int> profile);

/// Losing profiles all of whose strict successors win, lexicographically
/// descending.
std::vector<CoalitionProfile> shift_maximal_losing(const TypedGame& game);

/// Every profile 0 <= p_j <= n_j, lexicographically descending.
std::vector<CoalitionProfile> all_profiles(std::span<const int> class_sizes);

/// A coalition over n individually labelled voters, voter 1 first. Voters are
/// assumed sorted by non-increasing desirability.
class BinaryCoalition {
 public:
  BinaryCoalition() = default;
  explicit BinaryCoalition(std::vector<int> bits);
  /// Parses "0101"-style strings.
  static BinaryCoalition from_string(std::string_view text);
  /// Vertex numbering of the comparability graph: the bit vector read as a
  /// binary number with voter 1 as the most significant bit (n <= 63).
  static BinaryCoalition from_vertex(int n, std::uint64_t vertex);

  int size() const { return static_cast<int>(bits_.size()); }
  const std::vector<int>& bits() const { return bits_; }
  bool is_zero() const;
  std::uint64_t vertex() const;
  std::string to_string() const;

  friend bool operator==(const BinaryCoalition&, const BinaryCoalition&) = default;
  friend auto operator<=>(const BinaryCoalition&, const BinaryCoalition&) = default;

 private:
  std::vector<int> bits_;
};

/// One vector per row; within each class block the last m_ij positions are
/// set, which is the partial-sum minimal choice among equivalent coalitions.
std::vector<BinaryCoalition> typed_to_binary(const TypedGame& game);

/// Inverse of typed_to_binary. A class boundary sits between positions p and
/// p+1 exactly when some vector has a 1 at p and a 0 at p+1. Throws
/// InvalidInput for an empty set, a zero vector, a wrong length, or a
/// comparable pair.
TypedGame binary_to_typed(std::span<const BinaryCoalition> antichain, int n);

/// Largest possible number of shift-minimal winning coalitions for n voters:
/// the maximum over k of the number of subsets of {1..n} summing to k.
BigInt max_shift_minimal(int n);

/// Parameterization of two-type games with R >= 2 rows: x has R-1 entries,
/// y has R+1 entries and 2*sum(x) + sum(y) + z1 + z2 + 3(R-1) = n.
struct T2Decomposition {
  std::vector<int> x;
  std::vector<int> y;
  int z1 = 0;
  int z2 = 0;

  int num_rows() const { return static_cast<int>(x.size()) + 1; }
  int voters() const;
  friend bool operator==(const T2Decomposition&, const T2Decomposition&) = default;
};

/// Throws InvalidInput when x/y lengths disagree or an entry is negative.
TypedGame t2_compose(const T2Decomposition& d);
/// Throws InvalidInput unless t = 2 and there are at least two rows.
T2Decomposition t2_decompose(const TypedGame& game);

}  // namespace csg

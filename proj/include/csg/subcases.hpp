#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "csg/core_model.hpp"
#include "csg/polytope.hpp"

namespace csg {

/// Sub-case of the (t, r) games. Row pairs (i, j) and rows/columns are
/// 1-based. a(i,j) is the first prefix where rows i and j differ, b(i,j) the
/// next prefix where row j is ahead, c[j-1] the first row meeting the column
/// condition for column j, and d[j-1] encodes, in base 3, how the rows above
/// c[j-1] fail it. Along a row a(i,j) is non-increasing in j; down a column
/// a(i,j) is non-decreasing in i, since a(i,k) = min(a(i,j), a(j,k)).
struct SubcaseTuple {
  int t = 0;
  int r = 0;
  std::map<std::pair<int, int>, int> a;
  std::map<std::pair<int, int>, int> b;
  std::vector<int> c;
  std::vector<int> d;

  /// Digit for row i < c_j of column j: 0 (m_ij = 0, m_i,j+1 < n_j+1),
  /// 1 (m_ij > 0, m_i,j+1 = n_j+1) or 2 (m_ij = 0, m_i,j+1 = n_j+1).
  int digit(int i, int j) const;
  bool complete() const;

  std::string to_string() const;
  nlohmann::json to_json() const;

  friend auto operator<=>(const SubcaseTuple&, const SubcaseTuple&) = default;
  friend bool operator==(const SubcaseTuple&, const SubcaseTuple&) = default;
};

/// Problems with the components that are present; empty when consistent.
std::vector<std::string> tuple_violations(const SubcaseTuple& tuple);

SubcaseTuple parse_subcase_tuple(std::string_view text, int t, int r);

/// Constraints of the sub-case over n_j and m_i_j (and a free variable "n"
/// when no n is given). Missing components of a partial tuple add nothing.
RationalLinearSystem subcase_system(const SubcaseTuple& tuple, std::optional<int> n = {});

struct SubcaseOptions {
  int jobs = 1;
  /// Certification looks for an integer point with n in [t, probe]; 0 means 3(t + r).
  int probe = 0;
  FourierMotzkinOptions fourier_motzkin;
};

/// All certified tuples in canonical (sorted) order.
std::vector<SubcaseTuple> enumerate_subcases(int t, int r, const SubcaseOptions& options = {});

/// The unique tuple whose system the game satisfies. Needs t >= 2.
SubcaseTuple classify_game(const TypedGame& game);

/// Values of n_j and m_i_j (and n if present) in the variable order of
/// subcase_system.
std::vector<long> game_point(const TypedGame& game, const RationalLinearSystem& system);

}  // namespace csg

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "csg/numeric.hpp"

namespace csg {

enum class Relation { LessEq, Equal, GreaterEq };

struct Variable {
  std::string name;
  std::optional<long> lower;
  std::optional<long> upper;
};

struct Term {
  int var;
  Rational coefficient;
};

struct Constraint {
  std::vector<Term> terms;  // sorted by variable, no zero coefficients
  Relation relation;
  Rational rhs;
  std::string label;
};

/// Linear constraints over integer variables with exact rational data.
class RationalLinearSystem {
 public:
  int add_variable(std::string name, std::optional<long> lower = {}, std::optional<long> upper = {});
  int index_of(std::string_view name) const;
  bool has_variable(std::string_view name) const;
  void set_bounds(int var, std::optional<long> lower, std::optional<long> upper);

  /// Terms referring to the same variable are merged.
  void add_constraint(std::vector<Term> terms, Relation relation, Rational rhs, std::string label = {});
  void add_constraint(const std::vector<std::pair<std::string, Rational>>& terms, Relation relation,
                      Rational rhs, std::string label = {});

  int num_variables() const { return static_cast<int>(variables_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  /// True if the assignment (in declaration order) meets every bound and constraint.
  bool satisfied_by(std::span<const long> values) const;

  nlohmann::json to_json() const;
  std::string to_lp() const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
};

struct LatticeOptions {
  bool propagate = true;
  std::optional<std::uint64_t> limit;  // stop after this many points
};

/// Exact number of integer points, by depth-first assignment in declaration
/// order. With propagation every variable must get finite bounds from its
/// declared bounds and the constraints; without it the declared bounds alone
/// must be finite. Violations raise InvalidInput naming the variable.
BigInt count_lattice_points(const RationalLinearSystem& system, const LatticeOptions& options = {});

/// Calls `visit` with each point's values in declaration order; stops early
/// when `visit` returns false or the limit is reached. Returns the number visited.
std::uint64_t enumerate_lattice_points(const RationalLinearSystem& system,
                                       const std::function<bool(std::span<const long>)>& visit,
                                       const LatticeOptions& options = {});

enum class Feasibility { Feasible, Infeasible, ResourceLimit };

struct FourierMotzkinOptions {
  std::size_t max_constraints = 20000;
};

/// Nonemptiness of the real relaxation by Fourier-Motzkin elimination.
Feasibility rational_feasibility(const RationalLinearSystem& system,
                                 const FourierMotzkinOptions& options = {});

/// Two-type games with n voters and r rows: n1, n2, m_i_1, m_i_2 in that order.
RationalLinearSystem build_compact_t2(int n, int r);

/// Big-M model for t + r > 2 with k = n - t + 1. Game variables first
/// (n_j, then m_i_j row-major), then the binaries.
RationalLinearSystem build_big_m(int n, int t, int r);

std::string to_string(Relation relation);

}  // namespace csg

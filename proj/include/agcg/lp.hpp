#pragma once

#include <string_view>
#include <vector>

#include "agcg/types.hpp"

namespace agcg {

struct VariableBounds {
  double lower = -kInfinity;
  double upper = kInfinity;
};

/// min cᵀz  s.t.  ineq_matrix z ≤ ineq_rhs,  eq_matrix z = eq_rhs,  lower ≤ z ≤ upper.
struct LinearProgram {
  Vector objective;
  Matrix ineq_matrix;
  Vector ineq_rhs;
  Matrix eq_matrix;
  Vector eq_rhs;
  std::vector<VariableBounds> bounds;

  /// n free variables, zero objective, no rows.
  static LinearProgram with_variables(int n);

  int variables() const { return static_cast<int>(objective.size()); }
  void add_inequality(const Vector& row, double rhs);
  void add_equality(const Vector& row, double rhs);
  /// Throws ContractError on inconsistent dimensions or crossed bounds.
  void check() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LpStatus status);

struct LpOptions {
  /// Pivot, feasibility and optimality tolerance.
  double tolerance = 1e-9;
  int max_pivots = 50000;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector point;  // set when Optimal
  double value = 0.0;
  int pivots = 0;
  double tolerance = 1e-9;
};

/// Two-phase dense tableau simplex with Bland's anti-cycling rule. Deterministic
/// for a fixed input; throws NumericalError when the pivot cap is exceeded.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

/// Reference solver for tests: evaluates every basic point formed from the equality
/// rows plus n − rank of the inequality and bound rows. Needs at most 12 variables
/// and a bounded feasible set (an unbounded one is not detected). Returns Infeasible
/// when no basic point is feasible.
LpSolution enumerate_vertices_oracle(const LinearProgram& lp, double tolerance = 1e-9);

}  // namespace agcg

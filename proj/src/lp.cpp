#include "agcg/lp.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace agcg {

LinearProgram LinearProgram::with_variables(int n) {
  if (n <= 0) throw ContractError("linear program needs at least one variable");
  LinearProgram lp;
  lp.objective = Vector::Zero(n);
  lp.ineq_matrix = Matrix(0, n);
  lp.ineq_rhs = Vector(0);
  lp.eq_matrix = Matrix(0, n);
  lp.eq_rhs = Vector(0);
  lp.bounds.assign(static_cast<std::size_t>(n), VariableBounds{});
  return lp;
}

namespace {

void append_row(Matrix& matrix, Vector& rhs, const Vector& row, double value) {
  if (matrix.cols() != row.size()) {
    if (matrix.rows() != 0) throw ContractError("constraint row has wrong length");
    matrix.resize(0, row.size());
  }
  matrix.conservativeResize(matrix.rows() + 1, Eigen::NoChange);
  matrix.row(matrix.rows() - 1) = row.transpose();
  rhs.conservativeResize(rhs.size() + 1);
  rhs[rhs.size() - 1] = value;
}

}  // namespace

void LinearProgram::add_inequality(const Vector& row, double rhs) {
  append_row(ineq_matrix, ineq_rhs, row, rhs);
}

void LinearProgram::add_equality(const Vector& row, double rhs) {
  append_row(eq_matrix, eq_rhs, row, rhs);
}

void LinearProgram::check() const {
  const Eigen::Index n = objective.size();
  if (n == 0) throw ContractError("linear program has no variables");
  if (static_cast<Eigen::Index>(bounds.size()) != n) {
    throw ContractError(fmt::format("expected {} variable bounds, got {}", n, bounds.size()));
  }
  if (ineq_matrix.rows() > 0 && ineq_matrix.cols() != n) {
    throw ContractError("inequality matrix column count differs from objective length");
  }
  if (eq_matrix.rows() > 0 && eq_matrix.cols() != n) {
    throw ContractError("equality matrix column count differs from objective length");
  }
  if (ineq_rhs.size() != ineq_matrix.rows()) throw ContractError("inequality rhs length mismatch");
  if (eq_rhs.size() != eq_matrix.rows()) throw ContractError("equality rhs length mismatch");
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    const VariableBounds& b = bounds[j];
    if (std::isnan(b.lower) || std::isnan(b.upper) || b.lower > b.upper ||
        b.lower == kInfinity || b.upper == -kInfinity) {
      throw ContractError(fmt::format("invalid bounds for variable {}", j));
    }
  }
  if (!objective.allFinite() || !ineq_matrix.allFinite() || !ineq_rhs.allFinite() ||
      !eq_matrix.allFinite() || !eq_rhs.allFinite()) {
    throw ContractError("linear program data must be finite");
  }
}

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

// Nonnegative column w_c contributes sign_c · w_c to original variable var_c.
struct StructuralColumn {
  int var;
  double sign;
};

class Tableau {
 public:
  Tableau(Matrix table, std::vector<int> basis, int artificial_begin, const LpOptions& options)
      : t_(std::move(table)),
        basis_(std::move(basis)),
        artificial_begin_(artificial_begin),
        options_(options) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int rhs_col() const { return static_cast<int>(t_.cols()) - 1; }
  int obj_row() const { return static_cast<int>(t_.rows()) - 1; }
  int pivots() const { return pivots_; }
  const std::vector<int>& basis() const { return basis_; }
  double rhs(int r) const { return t_(r, rhs_col()); }
  double objective_value() const { return -t_(obj_row(), rhs_col()); }

  /// Loads cost vector c (size rhs_col()) and prices out the basic columns.
  void set_costs(const Vector& costs) {
    t_.row(obj_row()).setZero();
    t_.row(obj_row()).head(rhs_col()) = costs.transpose();
    for (int r = 0; r < rows(); ++r) {
      const double cb = costs[basis_[r]];
      if (cb != 0.0) t_.row(obj_row()) -= cb * t_.row(r);
    }
  }

  /// Runs primal simplex until optimal; returns false when unbounded.
  bool optimize(int column_limit) {
    const double tol = options_.tolerance;
    for (;;) {
      int entering = -1;
      for (int j = 0; j < column_limit; ++j) {
        if (t_(obj_row(), j) < -tol) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;

      Eigen::Index leaving = -1;
      double best_ratio = kInfinity;
      for (Eigen::Index r = 0; r + 1 < t_.rows(); ++r) {
        const double a = t_(r, entering);
        if (a <= tol) continue;
        const double ratio = t_(r, rhs_col()) / a;
        if (leaving < 0 || ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          leaving = r;
        } else if (ratio <= best_ratio + 1e-12 &&
                   basis_[static_cast<std::size_t>(r)] <
                       basis_[static_cast<std::size_t>(leaving)]) {
          best_ratio = std::min(best_ratio, ratio);
          leaving = r;
        }
      }
      if (leaving < 0) return false;
      pivot(static_cast<int>(leaving), entering);
    }
  }

  void pivot(int r, int c) {
    if (++pivots_ > options_.max_pivots) {
      throw NumericalError(
          fmt::format("simplex exceeded the pivot cap of {}", options_.max_pivots));
    }
    t_.row(r) /= t_(r, c);
    for (int i = 0; i < static_cast<int>(t_.rows()); ++i) {
      if (i == r) continue;
      const double factor = t_(i, c);
      if (factor != 0.0) t_.row(i) -= factor * t_.row(r);
    }
    basis_[r] = c;
  }

  /// After phase one: pivots artificial variables out of the basis and drops
  /// rows that turn out to be linearly dependent.
  void expel_artificials() {
    for (int r = 0; r < rows();) {
      if (basis_[r] < artificial_begin_) {
        ++r;
        continue;
      }
      int column = -1;
      for (int j = 0; j < artificial_begin_; ++j) {
        if (std::abs(t_(r, j)) > options_.tolerance) {
          column = j;
          break;
        }
      }
      if (column >= 0) {
        pivot(r, column);
        ++r;
      } else {
        remove_row(r);
      }
    }
  }

 private:
  void remove_row(int r) {
    const Eigen::Index last = t_.rows() - 1;
    t_.middleRows(r, last - r) = t_.middleRows(r + 1, last - r).eval();
    t_.conservativeResize(last, Eigen::NoChange);
    basis_.erase(basis_.begin() + r);
  }

  Matrix t_;
  std::vector<int> basis_;
  int artificial_begin_;
  LpOptions options_;
  int pivots_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options) {
  lp.check();
  const int n = lp.variables();
  const double tol = options.tolerance;

  // Substitute every variable by offset + signed nonnegative columns.
  Vector offset = Vector::Zero(n);
  std::vector<StructuralColumn> columns;
  std::vector<std::pair<int, double>> bound_rows;  // (column, upper limit)
  for (int j = 0; j < n; ++j) {
    const VariableBounds& b = lp.bounds[static_cast<std::size_t>(j)];
    const bool has_lower = std::isfinite(b.lower);
    const bool has_upper = std::isfinite(b.upper);
    if (has_lower) {
      offset[j] = b.lower;
      columns.push_back({j, 1.0});
      if (has_upper) bound_rows.emplace_back(static_cast<int>(columns.size()) - 1, b.upper - b.lower);
    } else if (has_upper) {
      offset[j] = b.upper;
      columns.push_back({j, -1.0});
    } else {
      columns.push_back({j, 1.0});
      columns.push_back({j, -1.0});
    }
  }
  const int num_structural = static_cast<int>(columns.size());
  const int num_ineq = static_cast<int>(lp.ineq_matrix.rows());
  const int num_eq = static_cast<int>(lp.eq_matrix.rows());
  const int num_bound = static_cast<int>(bound_rows.size());
  const int num_slack = num_ineq + num_bound;
  const int num_rows = num_slack + num_eq;

  // Rows in structural-column space, rhs before sign normalization.
  Matrix rows = Matrix::Zero(num_rows, num_structural);
  Vector rhs(num_rows);
  auto fill_row = [&](int r, const Eigen::Ref<const Eigen::RowVectorXd>& a, double b) {
    for (int c = 0; c < num_structural; ++c) rows(r, c) = a[columns[c].var] * columns[c].sign;
    rhs[r] = b - a.dot(offset.transpose());
  };
  for (int i = 0; i < num_ineq; ++i) fill_row(i, lp.ineq_matrix.row(i), lp.ineq_rhs[i]);
  for (int k = 0; k < num_bound; ++k) {
    rows(num_ineq + k, bound_rows[k].first) = 1.0;
    rhs[num_ineq + k] = bound_rows[k].second;
  }
  for (int i = 0; i < num_eq; ++i) fill_row(num_slack + i, lp.eq_matrix.row(i), lp.eq_rhs[i]);

  // Artificial variables for rows whose slack cannot start in the basis.
  std::vector<int> needs_artificial;
  for (int r = 0; r < num_rows; ++r) {
    if (r >= num_slack || rhs[r] < 0.0) needs_artificial.push_back(r);
  }
  const int artificial_begin = num_structural + num_slack;
  const int num_cols = artificial_begin + static_cast<int>(needs_artificial.size());

  Matrix table = Matrix::Zero(num_rows + 1, num_cols + 1);
  std::vector<int> basis(static_cast<std::size_t>(num_rows), -1);
  for (int r = 0; r < num_rows; ++r) {
    const double sign = rhs[r] < 0.0 ? -1.0 : 1.0;
    table.row(r).head(num_structural) = sign * rows.row(r);
    if (r < num_slack) table(r, num_structural + r) = sign;
    table(r, num_cols) = sign * rhs[r];
    if (r < num_slack && sign > 0.0) basis[static_cast<std::size_t>(r)] = num_structural + r;
  }
  for (std::size_t a = 0; a < needs_artificial.size(); ++a) {
    const int r = needs_artificial[a];
    table(r, artificial_begin + static_cast<int>(a)) = 1.0;
    basis[static_cast<std::size_t>(r)] = artificial_begin + static_cast<int>(a);
  }

  Tableau tableau(std::move(table), std::move(basis), artificial_begin, options);
  LpSolution solution;
  solution.tolerance = tol;

  if (!needs_artificial.empty()) {
    Vector phase_one = Vector::Zero(num_cols);
    phase_one.tail(num_cols - artificial_begin).setOnes();
    tableau.set_costs(phase_one);
    tableau.optimize(num_cols);
    const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
    if (tableau.objective_value() > tol * scale) {
      solution.status = LpStatus::Infeasible;
      solution.pivots = tableau.pivots();
      return solution;
    }
    tableau.expel_artificials();
  }

  Vector costs = Vector::Zero(num_cols);
  for (int c = 0; c < num_structural; ++c) costs[c] = lp.objective[columns[c].var] * columns[c].sign;
  tableau.set_costs(costs);
  const bool bounded = tableau.optimize(artificial_begin);
  solution.pivots = tableau.pivots();
  if (!bounded) {
    solution.status = LpStatus::Unbounded;
    return solution;
  }

  Vector w = Vector::Zero(num_structural);
  for (int r = 0; r < tableau.rows(); ++r) {
    const int b = tableau.basis()[static_cast<std::size_t>(r)];
    if (b < num_structural) w[b] = std::max(0.0, tableau.rhs(r));
  }
  Vector z = offset;
  for (int c = 0; c < num_structural; ++c) z[columns[c].var] += columns[c].sign * w[c];
  for (int j = 0; j < n; ++j) {
    const VariableBounds& b = lp.bounds[static_cast<std::size_t>(j)];
    z[j] = std::clamp(z[j], b.lower, b.upper);
  }
  solution.status = LpStatus::Optimal;
  solution.point = std::move(z);
  solution.value = lp.objective.dot(solution.point);
  return solution;
}

}  // namespace agcg

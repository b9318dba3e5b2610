#include <cmath>
#include <vector>

#include <Eigen/LU>

#include "agcg/lp.hpp"

namespace agcg {

namespace {

constexpr int kMaxOracleVariables = 12;

struct Row {
  Vector a;
  double b;
};

// Visits every k-subset of {0, …, count − 1} in lexicographic order.
template <typename Visit>
void for_each_subset(int count, int k, Visit&& visit) {
  if (k > count) return;
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    visit(pick);
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == count - k + i) --i;
    if (i < 0) return;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace

LpSolution enumerate_vertices_oracle(const LinearProgram& lp, double tolerance) {
  lp.check();
  const int n = lp.variables();
  if (n > kMaxOracleVariables) throw ContractError("vertex enumeration supports at most 12 variables");

  std::vector<Row> inequalities;
  for (Eigen::Index i = 0; i < lp.ineq_matrix.rows(); ++i) {
    inequalities.push_back({lp.ineq_matrix.row(i).transpose(), lp.ineq_rhs[i]});
  }
  for (int j = 0; j < n; ++j) {
    const VariableBounds& b = lp.bounds[static_cast<std::size_t>(j)];
    const Vector unit = Vector::Unit(n, j);
    if (std::isfinite(b.upper)) inequalities.push_back({unit, b.upper});
    if (std::isfinite(b.lower)) inequalities.push_back({-unit, -b.lower});
  }

  // Keep a maximal independent set of equality rows; the others are checked for
  // consistency at every candidate anyway.
  std::vector<Row> equalities;
  Matrix basis_rows(0, n);
  for (Eigen::Index i = 0; i < lp.eq_matrix.rows(); ++i) {
    Matrix grown(basis_rows.rows() + 1, n);
    grown << basis_rows, lp.eq_matrix.row(i);
    if (Eigen::FullPivLU<Matrix>(grown).rank() == grown.rows()) {
      basis_rows = grown;
      equalities.push_back({lp.eq_matrix.row(i).transpose(), lp.eq_rhs[i]});
    }
  }

  auto feasible = [&](const Vector& z) {
    for (const Row& r : inequalities) {
      if (r.a.dot(z) - r.b > tolerance * std::max(1.0, std::abs(r.b))) return false;
    }
    for (Eigen::Index i = 0; i < lp.eq_matrix.rows(); ++i) {
      const double rhs = lp.eq_rhs[i];
      if (std::abs(lp.eq_matrix.row(i).dot(z) - rhs) > tolerance * std::max(1.0, std::abs(rhs))) {
        return false;
      }
    }
    return true;
  };

  LpSolution best;
  best.status = LpStatus::Infeasible;
  best.tolerance = tolerance;
  const int free_rows = n - static_cast<int>(equalities.size());
  Matrix system(n, n);
  Vector rhs(n);
  for (std::size_t e = 0; e < equalities.size(); ++e) {
    system.row(static_cast<Eigen::Index>(e)) = equalities[e].a.transpose();
    rhs[static_cast<Eigen::Index>(e)] = equalities[e].b;
  }
  for_each_subset(static_cast<int>(inequalities.size()), free_rows, [&](const std::vector<int>& pick) {
    for (int s = 0; s < free_rows; ++s) {
      const Row& r = inequalities[static_cast<std::size_t>(pick[static_cast<std::size_t>(s)])];
      system.row(static_cast<Eigen::Index>(equalities.size()) + s) = r.a.transpose();
      rhs[static_cast<Eigen::Index>(equalities.size()) + s] = r.b;
    }
    Eigen::FullPivLU<Matrix> lu(system);
    if (lu.rank() < n) return;
    const Vector z = lu.solve(rhs);
    if (!feasible(z)) return;
    const double value = lp.objective.dot(z);
    if (best.status != LpStatus::Optimal || value < best.value) {
      best.status = LpStatus::Optimal;
      best.value = value;
      best.point = z;
    }
  });
  return best;
}

}  // namespace agcg

#include "agcg/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "agcg/detail/overloaded.hpp"
#include "agcg/lp.hpp"

namespace agcg {

using detail::Overloaded;

namespace {

void require_feasible(const CompositeProblem& problem, const Vector& x) {
  if (x.size() != problem.dimension()) {
    throw ContractError(
        fmt::format("point has length {}, expected {}", x.size(), problem.dimension()));
  }
  if (!problem.is_feasible(x)) throw ContractError("x must lie in the feasible region");
}

void require_jacobian(const CompositeProblem& problem, const Matrix& jacobian) {
  if (jacobian.rows() != problem.objectives() || jacobian.cols() != problem.dimension()) {
    throw ContractError("Jacobian has the wrong shape");
  }
}

}  // namespace

double psi(const CompositeProblem& problem, const Vector& x, const Vector& y) {
  require_feasible(problem, x);
  return psi(problem, eval_jacobian(problem, x), x, y);
}

double psi(const CompositeProblem& problem, const Matrix& jacobian, const Vector& x,
           const Vector& y) {
  const Vector model = linear_model(problem, jacobian, x, y);
  return model.maxCoeff();
}

Vector linear_model(const CompositeProblem& problem, const Matrix& jacobian, const Vector& x,
                    const Vector& y) {
  require_feasible(problem, x);
  require_jacobian(problem, jacobian);
  if (y.size() != x.size()) throw ContractError("direction length does not match x");
  const Vector target = x + y;
  if (!problem.is_feasible(target)) return Vector::Constant(problem.objectives(), kInfinity);
  Vector model = jacobian * y;
  for (int i = 0; i < problem.objectives(); ++i) {
    if (const PolyhedralTerm* term = problem.nonsmooth_term(i)) {
      model[i] += term->value(target) - term->value(x);
    }
  }
  return model;
}

ThetaResult theta(const CompositeProblem& problem, const Vector& x, double trust_radius) {
  require_feasible(problem, x);
  return theta(problem, eval_jacobian(problem, x), x, trust_radius);
}

ThetaResult theta(const CompositeProblem& problem, const Matrix& jacobian, const Vector& x,
                  double trust_radius) {
  require_feasible(problem, x);
  require_jacobian(problem, jacobian);
  if (!(trust_radius > 0.0) || !std::isfinite(trust_radius)) {
    throw ContractError("trust radius must be positive and finite");
  }
  const int n = problem.dimension();
  const int m = problem.objectives();

  // Variables: y (n), t, then one epigraph variable s_i per nonzero g_i.
  std::vector<int> epigraph(m, -1);
  int variables = n + 1;
  for (int i = 0; i < m; ++i) {
    if (problem.nonsmooth_term(i) != nullptr) epigraph[i] = variables++;
  }
  LinearProgram lp = LinearProgram::with_variables(variables);
  lp.objective[n] = 1.0;

  for (int i = 0; i < m; ++i) {
    Vector row = Vector::Zero(variables);
    row.head(n) = jacobian.row(i).transpose();
    row[n] = -1.0;
    double rhs = 0.0;
    if (const PolyhedralTerm* term = problem.nonsmooth_term(i)) {
      // s_i ≥ g_i(x + y), and ⟨∇f_i, y⟩ + s_i − g_i(x) ≤ t.
      const int s = epigraph[i];
      row[s] = 1.0;
      rhs = term->value(x);
      for (const AffinePiece& piece : term->pieces) {
        Vector cut = Vector::Zero(variables);
        cut.head(n) = piece.slope;
        cut[s] = -1.0;
        lp.add_inequality(cut, -piece.slope.dot(x) - piece.offset);
      }
    }
    lp.add_inequality(row, rhs);
  }

  std::vector<bool> trust_lower(n, false);
  std::vector<bool> trust_upper(n, false);
  auto set_trust_box = [&] {
    for (int j = 0; j < n; ++j) {
      VariableBounds& b = lp.bounds[j];
      if (!(b.lower > -trust_radius)) {
        b.lower = -trust_radius;
        trust_lower[j] = true;
      }
      if (!(b.upper < trust_radius)) {
        b.upper = trust_radius;
        trust_upper[j] = true;
      }
    }
  };

  bool needs_box = false;
  std::visit(Overloaded{
                 [&](const WholeSpace&) { needs_box = true; },
                 [&](const Box& box) {
                   for (int j = 0; j < n; ++j) {
                     lp.bounds[j] = {box.lower[j] - x[j], box.upper[j] - x[j]};
                   }
                   needs_box = !(box.lower.allFinite() && box.upper.allFinite());
                 },
                 [&](const UnitSimplex&) {
                   for (int j = 0; j < n; ++j) lp.bounds[j].lower = -x[j];
                   Vector row = Vector::Zero(variables);
                   row.head(n).setOnes();
                   lp.add_equality(row, 1.0 - x.sum());
                 },
                 [&](const Polyhedron& poly) {
                   for (Eigen::Index r = 0; r < poly.ineq_matrix.rows(); ++r) {
                     Vector row = Vector::Zero(variables);
                     row.head(n) = poly.ineq_matrix.row(r).transpose();
                     lp.add_inequality(row, poly.ineq_rhs[r] - poly.ineq_matrix.row(r).dot(x));
                   }
                   for (Eigen::Index r = 0; r < poly.eq_matrix.rows(); ++r) {
                     Vector row = Vector::Zero(variables);
                     row.head(n) = poly.eq_matrix.row(r).transpose();
                     lp.add_equality(row, poly.eq_rhs[r] - poly.eq_matrix.row(r).dot(x));
                   }
                   if (poly.nonneg) {
                     for (int j = 0; j < n; ++j) lp.bounds[j].lower = -x[j];
                   }
                 },
             },
             problem.region());
  if (needs_box) set_trust_box();

  LpSolution solution = solve_lp(lp);
  if (solution.status == LpStatus::Unbounded) {
    set_trust_box();
    solution = solve_lp(lp);
  }
  if (solution.status != LpStatus::Optimal) {
    throw NumericalError(
        fmt::format("theta LP ended with status {}", to_string(solution.status)));
  }

  ThetaResult result;
  result.minimizer = solution.point.head(n);
  result.value = solution.value;
  const double active_tol = 1e-9 * std::max(1.0, trust_radius);
  for (int j = 0; j < n; ++j) {
    const double yj = result.minimizer[j];
    if ((trust_lower[j] && yj <= lp.bounds[j].lower + active_tol) ||
        (trust_upper[j] && yj >= lp.bounds[j].upper - active_tol)) {
      result.truncated = true;
    }
  }
  if (!(result.value <= 0.0)) {
    result.value = 0.0;
    result.minimizer = Vector::Zero(n);
    result.truncated = false;
  }
  return result;
}

DirectionCandidate select_direction(const CompositeProblem& problem, const Vector& x,
                                    const AgcgConfig& config) {
  require_feasible(problem, x);
  return select_direction(problem, eval_jacobian(problem, x), x, config);
}

DirectionCandidate select_direction(const CompositeProblem& problem, const Matrix& jacobian,
                                    const Vector& x, const AgcgConfig& config) {
  DirectionCandidate candidate;
  candidate.theta = theta(problem, jacobian, x, config.trust_radius);
  candidate.y = candidate.theta.minimizer;
  candidate.psi_value = psi(problem, jacobian, x, candidate.y);
  if (!(candidate.psi_value <= 0.0)) {
    candidate.y = Vector::Zero(x.size());
    candidate.psi_value = 0.0;
  }
  candidate.sigma_used = 1.0;
  candidate.alpha_used = candidate.theta.truncated
                             ? std::max(config.alpha_min, -candidate.psi_value)
                             : config.alpha_min;
  return candidate;
}

MeritWindow default_merit_window(const CompositeProblem& problem) {
  const int n = problem.dimension();
  return std::visit(
      Overloaded{
          [n](const WholeSpace&) {
            return MeritWindow{Vector::Constant(n, -1.0), Vector::Constant(n, 3.0)};
          },
          [n](const Box& box) {
            MeritWindow w{box.lower, box.upper};
            for (int j = 0; j < n; ++j) {
              if (!std::isfinite(w.lower[j])) w.lower[j] = -1.0;
              if (!std::isfinite(w.upper[j])) w.upper[j] = 3.0;
            }
            return w;
          },
          [n](const UnitSimplex&) {
            return MeritWindow{Vector::Zero(n), Vector::Ones(n)};
          },
          [](const Polyhedron&) -> MeritWindow {
            throw ContractError("polyhedral regions need an explicit u0 window");
          },
      },
      problem.region());
}

MeritEstimate merit_u0_oracle(const CompositeProblem& problem, const Vector& x, int grid_points,
                              const std::optional<MeritWindow>& window) {
  const int n = problem.dimension();
  if (n > 2) throw ContractError("u0 grid oracle supports n <= 2 only");
  if (grid_points < 2) throw ContractError("u0 grid oracle needs at least 2 points per axis");
  require_feasible(problem, x);
  const MeritWindow w = window ? *window : default_merit_window(problem);
  if (w.lower.size() != n || w.upper.size() != n || ((w.upper - w.lower).array() < 0.0).any()) {
    throw ContractError("u0 window must be a nonempty box of dimension n");
  }

  const Vector vx = eval_V(problem, x);
  double best = 0.0;  // y = x
  auto consider = [&](const Vector& y) {
    if (!problem.is_feasible(y)) return;
    best = std::max(best, (vx - eval_V(problem, y)).minCoeff());
  };

  // On the simplex the last coordinate is determined by the others.
  const bool simplex = std::holds_alternative<UnitSimplex>(problem.region());
  const int free_axes = simplex ? n - 1 : n;
  auto coordinate = [&](int axis, int index) {
    const double step = (w.upper[axis] - w.lower[axis]) / (grid_points - 1);
    return w.lower[axis] + step * index;
  };
  double resolution = 0.0;
  for (int axis = 0; axis < free_axes; ++axis) {
    resolution = std::max(resolution, (w.upper[axis] - w.lower[axis]) / (grid_points - 1));
  }

  Vector y(n);
  auto complete = [&] {
    if (simplex) y[n - 1] = 1.0 - y.head(n - 1).sum();
    consider(y);
  };
  if (free_axes == 0) {
    complete();
  } else if (free_axes == 1) {
    for (int a = 0; a < grid_points; ++a) {
      y[0] = coordinate(0, a);
      complete();
    }
  } else {
    for (int a = 0; a < grid_points; ++a) {
      y[0] = coordinate(0, a);
      for (int b = 0; b < grid_points; ++b) {
        y[1] = coordinate(1, b);
        complete();
      }
    }
  }
  return MeritEstimate{best, resolution};
}

bool psi_scaling_check(const CompositeProblem& problem, const Vector& x, const Vector& z,
                       double sigma) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw ContractError("sigma must lie in [0, 1]");
  const Matrix jacobian = eval_jacobian(problem, x);
  const double full = psi(problem, jacobian, x, z);
  if (!std::isfinite(full)) return true;
  return psi(problem, jacobian, x, sigma * z) <= sigma * full + 1e-10;
}

}  // namespace agcg

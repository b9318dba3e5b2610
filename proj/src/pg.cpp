#include "agcg/pg.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "agcg/detail/overloaded.hpp"
#include "agcg/solver.hpp"

namespace agcg {

using detail::Overloaded;

namespace {

void require_supported(const CompositeProblem& problem) {
  if (problem.has_nonsmooth()) {
    for (int i = 0; i < problem.objectives(); ++i) {
      if (problem.nonsmooth_term(i) != nullptr) {
        throw ContractError("proximal gradient baseline supports g ≡ 0 on the region only");
      }
    }
  }
  if (std::holds_alternative<Polyhedron>(problem.region())) {
    throw ContractError("proximal gradient baseline does not support polyhedral regions");
  }
}

struct DualPoint {
  Vector y;
  double value;
};

DualPoint dual_at(const CompositeProblem& problem, const Matrix& jacobian, const Vector& x,
                  const Vector& weights) {
  const Vector w = jacobian.transpose() * weights;
  Vector y = project_onto_shifted_region(problem, x, -w);
  const double value = w.dot(y) + 0.5 * y.squaredNorm();
  return DualPoint{std::move(y), value};
}

double primal_value(const Matrix& jacobian, const Vector& y) {
  return (jacobian * y).maxCoeff() + 0.5 * y.squaredNorm();
}

Vector pair_weights(double s) {
  Vector w(2);
  w << s, 1.0 - s;
  return w;
}

}  // namespace

Vector project_onto_shifted_region(const CompositeProblem& problem, const Vector& x,
                                   const Vector& v) {
  return std::visit(Overloaded{
                        [&](const WholeSpace&) -> Vector { return v; },
                        [&](const Box& box) -> Vector {
                          return (x + v).cwiseMax(box.lower).cwiseMin(box.upper) - x;
                        },
                        [&](const UnitSimplex&) -> Vector {
                          return project_onto_simplex(x + v) - x;
                        },
                        [](const Polyhedron&) -> Vector {
                          throw ContractError("projection onto a polyhedron is not supported");
                        },
                    },
                    problem.region());
}

double pg_dual_objective(const CompositeProblem& problem, const Matrix& jacobian,
                         const Vector& x, const Vector& weights) {
  if (weights.size() != jacobian.rows()) throw ContractError("weights length must equal m");
  return dual_at(problem, jacobian, x, weights).value;
}

PgSubproblemResult pg_subproblem(const CompositeProblem& problem, const Vector& x,
                                 const PgConfig& config) {
  return pg_subproblem(problem, eval_jacobian(problem, x), x, config);
}

PgSubproblemResult pg_subproblem(const CompositeProblem& problem, const Matrix& jacobian,
                                 const Vector& x, const PgConfig& config) {
  require_supported(problem);
  if (x.size() != problem.dimension() || !problem.is_feasible(x)) {
    throw ContractError("x must be a feasible point of matching dimension");
  }
  const int m = problem.objectives();
  PgSubproblemResult result;

  if (m == 1) {
    result.weights = Vector::Ones(1);
  } else if (m == 2) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = 0.0;
    double b = 1.0;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double hc = dual_at(problem, jacobian, x, pair_weights(c)).value;
    double hd = dual_at(problem, jacobian, x, pair_weights(d)).value;
    while (b - a > config.dual_tolerance) {
      if (++result.dual_iterations > config.max_dual_iterations) {
        throw NumericalError("golden-section dual search did not converge");
      }
      if (hc >= hd) {
        b = d;
        d = c;
        hd = hc;
        c = b - kInvPhi * (b - a);
        hc = dual_at(problem, jacobian, x, pair_weights(c)).value;
      } else {
        a = c;
        c = d;
        hc = hd;
        d = a + kInvPhi * (b - a);
        hd = dual_at(problem, jacobian, x, pair_weights(d)).value;
      }
    }
    // The maximizer may sit on an endpoint of [0, 1].
    double best_s = 0.5 * (a + b);
    double best_h = dual_at(problem, jacobian, x, pair_weights(best_s)).value;
    for (double s : {0.0, 1.0}) {
      const double h = dual_at(problem, jacobian, x, pair_weights(s)).value;
      if (h > best_h) {
        best_h = h;
        best_s = s;
      }
    }
    result.weights = pair_weights(best_s);
  } else {
    const Matrix gram = jacobian * jacobian.transpose();
    const double curvature =
        std::max(Eigen::SelfAdjointEigenSolver<Matrix>(gram).eigenvalues().maxCoeff(), 1e-12);
    Vector weights = Vector::Constant(m, 1.0 / m);
    bool converged = false;
    while (!converged) {
      if (++result.dual_iterations > config.max_dual_iterations) {
        throw NumericalError("projected dual ascent did not converge");
      }
      const DualPoint point = dual_at(problem, jacobian, x, weights);
      const double gap = primal_value(jacobian, point.y) - point.value;
      const Vector next = project_onto_simplex(weights + (jacobian * point.y) / curvature);
      converged = gap <= config.dual_tolerance || (next - weights).norm() <= config.dual_tolerance;
      weights = next;
    }
    result.weights = weights;
  }

  result.y = dual_at(problem, jacobian, x, result.weights).y;
  result.value = primal_value(jacobian, result.y);
  if (!(result.value <= 0.0)) {
    result.y = Vector::Zero(x.size());
    result.value = 0.0;
  }
  return result;
}

Trace pg_run(const CompositeProblem& problem, const Vector& x0, const PgConfig& config) {
  config.validate();
  require_supported(problem);
  if (x0.size() != problem.dimension()) {
    throw ContractError(
        fmt::format("x0 has length {}, expected {}", x0.size(), problem.dimension()));
  }
  if (!problem.is_feasible(x0)) throw ContractError("x0 is not feasible");

  const auto start = std::chrono::steady_clock::now();
  Trace trace;
  trace.solver = "pg";
  trace.x0 = x0;

  CountingEvaluator evaluator(problem);
  Vector x = x0;
  Vector V = evaluator.V(x);
  int k = 0;
  try {
    while (true) {
      const Matrix jacobian = evaluator.jacobian(x);
      const PgSubproblemResult sub = pg_subproblem(problem, jacobian, x, config);
      ++trace.subproblem_solves;
      const double psi_y = (jacobian * sub.y).maxCoeff();
      trace.final_theta = sub.value;
      trace.final_psi = psi_y;
      if (std::abs(sub.value) <= config.critical_tolerance) {
        trace.status = RunStatus::CriticalAtStep1;
        break;
      }
      // The subproblem value stands in for both ψ and θ in the stopping rules.
      if (stopping_rule_met(config.stopping_rule, config.mu, sub.value, sub.value, x0)) {
        trace.status = RunStatus::ToleranceMet;
        break;
      }
      if (k >= config.max_iterations) {
        trace.status = RunStatus::IterationCap;
        break;
      }

      IterationRecord record;
      bool accepted = false;
      for (int j = 0; j < config.max_linesearch && !accepted; ++j) {
        const double eta = std::pow(config.shrink, j);
        Vector trial = evaluator.V(x + eta * sub.y);
        ++record.compfun_delta;
        if (((trial - V).array() <= config.beta * eta * psi_y).all()) {
          accepted = true;
          record.l = j;
          record.lambda = eta;
          record.V_next = std::move(trial);
        }
      }
      if (!accepted) {
        throw NumericalError(fmt::format(
            "proximal gradient line search rejected all {} steps (|y|={:.6g}, psi={:.6g})",
            config.max_linesearch, sub.y.norm(), psi_y));
      }
      record.k = k;
      record.x = x;
      record.y = sub.y;
      record.d = sub.y;
      record.t = std::abs(psi_y);
      record.xi = 1.0;
      record.psi_y = psi_y;
      record.psi_d = psi_y;
      record.theta = sub.value;
      record.V = V;

      x = x + record.lambda * sub.y;
      V = record.V_next;
      ++k;
      trace.records.push_back(std::move(record));
    }
  } catch (const NumericalError& error) {
    trace.status = RunStatus::Failed;
    trace.message = error.what();
  }

  trace.final_x = x;
  trace.final_V = V;
  trace.value_evaluations = evaluator.value_evaluations();
  trace.jacobian_evaluations = evaluator.jacobian_evaluations();
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

}  // namespace agcg

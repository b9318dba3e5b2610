#include "agcg/solver.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

namespace agcg {

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::CriticalAtStep1:
      return "critical";
    case RunStatus::ToleranceMet:
      return "tolerance";
    case RunStatus::IterationCap:
      return "iteration_cap";
    case RunStatus::Failed:
      return "failed";
  }
  return "failed";
}

RunStatus parse_run_status(std::string_view text) {
  if (text == "critical") return RunStatus::CriticalAtStep1;
  if (text == "tolerance") return RunStatus::ToleranceMet;
  if (text == "iteration_cap") return RunStatus::IterationCap;
  if (text == "failed") return RunStatus::Failed;
  throw ContractError(fmt::format("unknown run status '{}'", std::string(text)));
}

NormalizedDirection normalize_direction(double psi_y, const Vector& y, double epsilon) {
  if (y.size() == 0 || !(y.norm() > 0.0)) throw ContractError("direction y must be nonzero");
  if (!(psi_y < 0.0)) throw ContractError("psi(x, y) must be negative to normalize");
  if (!(epsilon > 0.0)) throw ContractError("epsilon must be positive");
  const double squared = y.squaredNorm();
  const double t = -psi_y;
  if (psi_y <= -epsilon * squared) return NormalizedDirection{y, 1.0, t};
  const double xi = t / (epsilon * squared);
  return NormalizedDirection{xi * y, xi, t};
}

LineSearchResult armijo_search(CountingEvaluator& evaluator, const Vector& x, const Vector& Vx,
                               const Vector& d, const Vector& model, double epsilon, double beta,
                               int cap) {
  if (!(beta > 0.0 && beta < 0.5)) throw ContractError("beta must lie in (0, 1/2)");
  if (cap < 1) throw ContractError("line-search cap must be positive");
  const double ratio = 1.0 - 2.0 * beta;
  const Vector decrease = model.array() - epsilon * d.squaredNorm();
  LineSearchResult result;
  for (int j = 1; j <= cap; ++j) {
    const double step = std::pow(ratio, j);
    Vector trial = evaluator.V(x + step * d);
    ++result.evaluations;
    if (((trial - Vx).array() <= step * beta * decrease.array()).all()) {
      result.l = j;
      result.lambda = step;
      result.V_trial = std::move(trial);
      return result;
    }
  }
  throw NumericalError(fmt::format(
      "Armijo search rejected all {} trial steps (epsilon={:.6g}, |d|={:.6g}, max model={:.6g})",
      cap, epsilon, d.norm(), model.maxCoeff()));
}

LineSearchResult armijo_search(const CompositeProblem& problem, const Vector& x, const Vector& d,
                               double epsilon, double beta, int cap) {
  CountingEvaluator evaluator(problem);
  const Matrix jacobian = eval_jacobian(problem, x);
  const Vector model = linear_model(problem, jacobian, x, d);
  return armijo_search(evaluator, x, eval_V(problem, x), d, model, epsilon, beta, cap);
}

IterationRecord advance(CountingEvaluator& evaluator, AgcgState& state, const AgcgConfig& config,
                        const Matrix& jacobian, const DirectionCandidate& candidate) {
  const CompositeProblem& problem = evaluator.problem();
  const NormalizedDirection direction =
      normalize_direction(candidate.psi_value, candidate.y, state.epsilon);
  const Vector model = linear_model(problem, jacobian, state.x, direction.d);
  LineSearchResult search = armijo_search(evaluator, state.x, state.V, direction.d, model,
                                          state.epsilon, config.beta, config.max_linesearch);

  IterationRecord record;
  record.k = state.k;
  record.x = state.x;
  record.y = candidate.y;
  record.d = direction.d;
  record.t = direction.t;
  record.xi = direction.xi;
  record.epsilon = state.epsilon;
  record.epsilon_next = state.epsilon * std::pow(1.0 - 2.0 * config.beta, 1 - search.l);
  record.l = search.l;
  record.lambda = search.lambda;
  record.psi_y = candidate.psi_value;
  record.psi_d = model.maxCoeff();
  record.theta = candidate.theta.value;
  record.theta_truncated = candidate.theta.truncated;
  record.alpha = candidate.alpha_used;
  record.sigma = candidate.sigma_used;
  record.V = state.V;
  record.V_next = search.V_trial;
  record.compfun_delta = search.evaluations;

  state.x = state.x + search.lambda * direction.d;
  state.V = std::move(search.V_trial);
  state.epsilon = record.epsilon_next;
  ++state.k;
  return record;
}

StepOutcome agcg_step(CountingEvaluator& evaluator, AgcgState& state, const AgcgConfig& config) {
  const Matrix jacobian = evaluator.jacobian(state.x);
  DirectionCandidate candidate =
      select_direction(evaluator.problem(), jacobian, state.x, config);
  if (std::abs(candidate.psi_value) <= config.critical_tolerance) {
    return CriticalStop{std::move(candidate)};
  }
  return advance(evaluator, state, config, jacobian, candidate);
}

double stopping_scale(const Vector& x0) {
  const double norm = x0.norm();
  return norm > 0.0 ? std::min(2.0, norm) : 1.0;
}

bool stopping_rule_met(StoppingRule rule, double mu, double psi_y, double theta_value,
                       const Vector& x0) {
  switch (rule) {
    case StoppingRule::ThetaAbs:
      return std::abs(theta_value) <= mu;
    case StoppingRule::PsiThetaNormalized:
      return (std::abs(psi_y) + std::abs(theta_value)) / stopping_scale(x0) <= mu;
  }
  return false;
}

Trace agcg_run(const CompositeProblem& problem, const Vector& x0, const AgcgConfig& config) {
  config.validate();
  if (x0.size() != problem.dimension()) {
    throw ContractError(
        fmt::format("x0 has length {}, expected {}", x0.size(), problem.dimension()));
  }
  if (!problem.is_feasible(x0)) throw ContractError("x0 is not feasible");

  const auto start = std::chrono::steady_clock::now();
  Trace trace;
  trace.solver = "agcg";
  trace.x0 = x0;

  CountingEvaluator evaluator(problem);
  AgcgState state{0, x0, evaluator.V(x0), config.epsilon0};
  try {
    while (true) {
      const Matrix jacobian = evaluator.jacobian(state.x);
      const DirectionCandidate candidate =
          select_direction(problem, jacobian, state.x, config);
      ++trace.subproblem_solves;
      trace.final_theta = candidate.theta.value;
      trace.final_theta_truncated = candidate.theta.truncated;
      trace.final_psi = candidate.psi_value;
      if (std::abs(candidate.psi_value) <= config.critical_tolerance) {
        trace.status = RunStatus::CriticalAtStep1;
        break;
      }
      if (stopping_rule_met(config.stopping_rule, config.mu, candidate.psi_value,
                            candidate.theta.value, x0)) {
        trace.status = RunStatus::ToleranceMet;
        break;
      }
      if (state.k >= config.max_iterations) {
        trace.status = RunStatus::IterationCap;
        break;
      }
      trace.records.push_back(advance(evaluator, state, config, jacobian, candidate));
    }
  } catch (const NumericalError& error) {
    trace.status = RunStatus::Failed;
    trace.message = error.what();
  }

  trace.final_x = state.x;
  trace.final_V = state.V;
  trace.final_epsilon = state.epsilon;
  trace.value_evaluations = evaluator.value_evaluations();
  trace.jacobian_evaluations = evaluator.jacobian_evaluations();
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

}  // namespace agcg

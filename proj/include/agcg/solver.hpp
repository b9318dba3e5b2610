#pragma once

#include <variant>

#include "agcg/config.hpp"
#include "agcg/problem.hpp"
#include "agcg/subproblem.hpp"
#include "agcg/trace.hpp"

namespace agcg {

struct NormalizedDirection {
  Vector d;
  double xi = 1.0;
  double t = 0.0;
};

/// STEP 2: scale y so that ψ(x, d) + ε‖d‖² ≤ 0. Requires y ≠ 0 and psi_y < 0.
NormalizedDirection normalize_direction(double psi_y, const Vector& y, double epsilon);

struct LineSearchResult {
  int l = 0;
  double lambda = 1.0;
  long evaluations = 0;
  Vector V_trial;  // V(x + λd)
};

/// STEP 3: smallest j ≥ 1 with
///   V(x + (1−2β)^j d) − V(x) ⪯ (1−2β)^j β (JF(x)d + G(x+d) − G(x) − ε‖d‖² e).
/// Throws NumericalError when no j ≤ cap is accepted.
LineSearchResult armijo_search(CountingEvaluator& evaluator, const Vector& x, const Vector& Vx,
                               const Vector& d, const Vector& model, double epsilon, double beta,
                               int cap);
/// Convenience form that evaluates V(x) and the linear model itself (V(x) is not counted).
LineSearchResult armijo_search(const CompositeProblem& problem, const Vector& x, const Vector& d,
                               double epsilon, double beta, int cap);

struct AgcgState {
  int k = 0;
  Vector x;
  Vector V;
  double epsilon = 0.0;
};

struct CriticalStop {
  DirectionCandidate candidate;
};

using StepOutcome = std::variant<IterationRecord, CriticalStop>;

/// STEPs 2–4 for an already selected candidate; updates `state` in place.
IterationRecord advance(CountingEvaluator& evaluator, AgcgState& state, const AgcgConfig& config,
                        const Matrix& jacobian, const DirectionCandidate& candidate);

/// One full iteration of STEPs 1–4.
StepOutcome agcg_step(CountingEvaluator& evaluator, AgcgState& state, const AgcgConfig& config);

/// Denominator of the normalized stopping rule: min{2, ‖x₀‖}, or 1 when x₀ = 0.
double stopping_scale(const Vector& x0);
bool stopping_rule_met(StoppingRule rule, double mu, double psi_y, double theta_value,
                       const Vector& x0);

/// Full loop. Throws ContractError on an invalid config or infeasible x0; numerical
/// breakdown inside a step ends the run with status Failed.
Trace agcg_run(const CompositeProblem& problem, const Vector& x0, const AgcgConfig& config);

}  // namespace agcg

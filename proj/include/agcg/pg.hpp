#pragma once

#include "agcg/config.hpp"
#include "agcg/problem.hpp"
#include "agcg/trace.hpp"

namespace agcg {

struct PgSubproblemResult {
  Vector y;
  /// max_i ⟨∇f_i(x), y⟩ + ½‖y‖² at y; never positive.
  double value = 0.0;
  /// Dual weights on the objectives.
  Vector weights;
  int dual_iterations = 0;
};

/// Euclidean projection of v onto Ω − x. Box and simplex regions only, and only
/// problems without a nonzero nonsmooth term.
Vector project_onto_shifted_region(const CompositeProblem& problem, const Vector& x,
                                   const Vector& v);

/// Dual objective h(λ) = ⟨Jᵀλ, y(λ)⟩ + ½‖y(λ)‖² with y(λ) = P_{Ω−x}(−Jᵀλ).
double pg_dual_objective(const CompositeProblem& problem, const Matrix& jacobian,
                         const Vector& x, const Vector& weights);

/// min_y max_i ⟨∇f_i(x), y⟩ + ½‖y‖² over x + y ∈ Ω, through its dual over the
/// weight simplex: golden-section search for two objectives, projected gradient
/// ascent otherwise. Throws NumericalError when the dual solve hits its cap.
PgSubproblemResult pg_subproblem(const CompositeProblem& problem, const Vector& x,
                                 const PgConfig& config = {});
PgSubproblemResult pg_subproblem(const CompositeProblem& problem, const Matrix& jacobian,
                                 const Vector& x, const PgConfig& config);

/// Backtracking proximal gradient loop. Records carry the subproblem value in
/// `theta`, the step η in `lambda` and its exponent in `l`.
Trace pg_run(const CompositeProblem& problem, const Vector& x0, const PgConfig& config);

}  // namespace agcg

#pragma once

#include <optional>

#include "agcg/config.hpp"
#include "agcg/problem.hpp"

namespace agcg {

struct ThetaResult {
  /// min ψ(x, y) over feasible y (within the trust box when truncated). Never positive.
  double value = 0.0;
  Vector minimizer;
  /// A trust-box side was active at the minimizer, so value only bounds θ from above.
  bool truncated = false;
};

struct DirectionCandidate {
  Vector y;
  double psi_value = 0.0;
  double alpha_used = 0.0;
  double sigma_used = 1.0;
  ThetaResult theta;
};

struct MeritEstimate {
  double value = 0.0;
  double grid_resolution = 0.0;
};

/// Axis-aligned window for the u₀ grid search.
struct MeritWindow {
  Vector lower;
  Vector upper;
};

/// ψ(x, y) = max_i ⟨∇f_i(x), y⟩ + g_i(x + y) − g_i(x). +∞ when x + y leaves the region.
/// Throws ContractError when x itself is infeasible.
double psi(const CompositeProblem& problem, const Vector& x, const Vector& y);
/// Same, with the Jacobian at x already evaluated.
double psi(const CompositeProblem& problem, const Matrix& jacobian, const Vector& x,
           const Vector& y);

/// JF(x)y + G(x + y) − G(x), the vector whose maximum is ψ(x, y).
Vector linear_model(const CompositeProblem& problem, const Matrix& jacobian, const Vector& x,
                    const Vector& y);

/// θ(x) from the epigraph LP  min t  s.t. ⟨∇f_i(x), y⟩ + g_i(x + y) − g_i(x) ≤ t, x + y ∈ Ω.
/// Unbounded directions are cut by the box [−R, R]ⁿ.
ThetaResult theta(const CompositeProblem& problem, const Vector& x, double trust_radius);
ThetaResult theta(const CompositeProblem& problem, const Matrix& jacobian, const Vector& x,
                  double trust_radius);

/// STEP 1 candidate with σ_k = 1 and α_k = max(α_min, −ψ(x, y_k)) on truncated LPs.
DirectionCandidate select_direction(const CompositeProblem& problem, const Vector& x,
                                    const AgcgConfig& config);
DirectionCandidate select_direction(const CompositeProblem& problem, const Matrix& jacobian,
                                    const Vector& x, const AgcgConfig& config);

/// Default window: [−1, 3]ⁿ for unbounded regions, the bounding box of a box or the
/// simplex otherwise. Polyhedra need an explicit window.
MeritWindow default_merit_window(const CompositeProblem& problem);

/// Grid estimate of u₀(x) = sup_y min_i (V_i(x) − V_i(y)) with `grid_points` samples per
/// axis, restricted to feasible grid points. x itself is always a candidate, so the
/// estimate is never negative. Only n ≤ 2.
MeritEstimate merit_u0_oracle(const CompositeProblem& problem, const Vector& x, int grid_points,
                              const std::optional<MeritWindow>& window = std::nullopt);

/// ψ(x, σz) ≤ σψ(x, z) + 1e-10.
bool psi_scaling_check(const CompositeProblem& problem, const Vector& x, const Vector& z,
                       double sigma);

}  // namespace agcg

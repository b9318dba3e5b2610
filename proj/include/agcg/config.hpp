#pragma once

#include <string_view>

namespace agcg {

enum class StoppingRule {
  /// |θ(x_k)| ≤ μ
  ThetaAbs,
  /// (|ψ(x_k, y_k)| + |θ(x_k)|) / min{2, ‖x₀‖} ≤ μ
  PsiThetaNormalized,
};

std::string_view to_string(StoppingRule rule);
/// Accepts "theta" and "psitheta".
StoppingRule parse_stopping_rule(std::string_view text);

/// Tuning of the adaptive conditional gradient solver. Defaults follow the
/// benchmark settings (ε₀ = 0.1, β = 0.2, σ_min = 1e-3, α_min = 1e3).
struct AgcgConfig {
  double epsilon0 = 0.1;
  double beta = 0.2;
  double sigma_min = 1e-3;
  double alpha_min = 1e3;
  double mu = 1e-6;
  /// Half-width of the box that bounds the linear subproblem on unbounded regions.
  double trust_radius = 1.0;
  int max_iterations = 10000;
  int max_linesearch = 60;
  StoppingRule stopping_rule = StoppingRule::ThetaAbs;
  /// |ψ(x_k, y_k)| at or below this counts as zero at STEP 1.
  double critical_tolerance = 1e-12;

  /// Throws ContractError when a parameter is out of range.
  void validate() const;
};

/// Line-search proximal gradient baseline.
struct PgConfig {
  double beta = 0.2;
  double shrink = 0.5;
  double mu = 1e-6;
  int max_iterations = 10000;
  int max_linesearch = 60;
  double dual_tolerance = 1e-12;
  int max_dual_iterations = 20000;
  StoppingRule stopping_rule = StoppingRule::ThetaAbs;
  double critical_tolerance = 1e-12;

  void validate() const;
};

}  // namespace agcg

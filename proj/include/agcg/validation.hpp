#pragma once

#include <optional>
#include <string>
#include <vector>

#include "agcg/config.hpp"
#include "agcg/problem.hpp"
#include "agcg/subproblem.hpp"
#include "agcg/trace.hpp"

namespace agcg {

/// Constants of the convergence analysis. δ and ρ are the largest values observed
/// on the traces they were computed from.
struct TheoryConstants {
  double L = 0.0;
  double L_G = 0.0;
  double beta = 0.2;
  double epsilon0 = 0.1;
  double sigma_min = 1e-3;
  /// ε̄ = L / (2(1 − 2β))
  double epsilon_bar = 0.0;
  /// γ = min{2ε₀(1 − 2β)² / L, 1 − 2β}
  double gamma = 0.0;
  /// max ‖y_k‖
  double delta = 0.0;
  /// max_k max_i ‖∇f_i(x_k)‖
  double rho = 0.0;
  /// τ = γ / (δ(ρ + L_G))
  double tau = 0.0;
  /// ϖ = min{τ, γ / (ε̄δ²)}
  double varpi = 0.0;
  /// 2ε₀ < L, which the ε̄ bound and ϖ need.
  bool epsilon_bar_applies = false;
  /// δ(ρ + L_G) > 0, so τ is finite.
  bool tau_defined = false;
};

/// Empty when the problem lacks L or L_G. Throws when a trace was not produced on `problem`.
std::optional<TheoryConstants> theory_constants(const CompositeProblem& problem,
                                                const std::vector<const Trace*>& traces,
                                                const AgcgConfig& config);
std::optional<TheoryConstants> theory_constants(const CompositeProblem& problem,
                                                const Trace& trace, const AgcgConfig& config);

struct CheckResult {
  std::string name;
  bool skipped = false;
  bool passed = true;
  /// Smallest (rhs − lhs) seen; negative beyond the slack means failure.
  double worst_margin = kInfinity;
  /// Iteration where the worst margin occurred, −1 if none.
  int worst_index = -1;
  int evaluated = 0;
  std::string note;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  std::vector<std::string> failed_checks() const;
  std::vector<std::string> skipped_checks() const;
  const CheckResult* find(const std::string& name) const;
  /// One line per check.
  std::string to_text() const;
};

/// Checks every per-iteration inequality of the analysis on an A-GCG trace:
/// ε monotone and bounded by ε̄, strict decrease, the γ/τ/ϖ sufficient decreases,
/// the step lower bounds, ‖d‖ ≤ ‖y‖, the ε-normalization certificate, the step
/// shape λ = (1 − 2β)^l and d = ξy, the line-search acceptance inequality, and the
/// recorded values against fresh evaluations. Checks needing L are skipped when it
/// is unknown.
ValidationReport validate_trace(const CompositeProblem& problem, const Trace& trace,
                                const AgcgConfig& config, double slack = 1e-9);

/// Componentwise infima of V over the region: zero-center quadratics on the whole
/// space, and any convex quadratic over the simplex or a bounded box (lower bound
/// certified by the conditional gradient gap). Empty otherwise.
std::optional<Vector> objective_infima(const CompositeProblem& problem);

struct ComplexityEntry {
  int trace_index = 0;
  /// First k with |θ(x_k)| ≤ μ; −1 when the trace never got there.
  int first_index = -1;
  double bound = 0.0;
  bool passed = true;
  /// min over k, i of (V_i(x_k) − V_i(x_{k+1})) − ϖβσ_min θ_k².
  double worst_summation_margin = kInfinity;
  std::string note;
};

struct ComplexityReport {
  std::vector<ComplexityEntry> entries;
  bool passed = true;
  int skipped = 0;
};

/// N_μ ≤ min_i (V_i(x₀) − V_i^inf) / (ϖβσ_min μ²) and the per-iteration summation
/// inequality ϖβσ_min θ_k² ≤ V_i(x_k) − V_i(x_{k+1}). Traces that never reach
/// |θ| ≤ μ or carry truncated θ values are skipped with a note.
ComplexityReport complexity_check(const std::vector<const Trace*>& traces, double mu,
                                  const TheoryConstants& constants, const Vector& V_inf,
                                  double slack = 1e-9);

struct RateReport {
  std::vector<double> u0;
  bool monotone = true;
  bool envelope = true;
  bool sequence_envelope = true;
  /// min over k of u₀(x_k) − u₀(x_{k+1})
  double worst_monotone_margin = kInfinity;
  /// min over k ≥ 1 of 1/(ϖβσ_min² k) − u₀(x_k)
  double worst_envelope_margin = kInfinity;
  /// min over k of u₀(x₀)/(1 + ϖβσ_min² u₀(x₀) k) − u₀(x_k)
  double worst_sequence_margin = kInfinity;
  bool passed() const { return monotone && envelope && sequence_envelope; }
};

/// Rate checks on a given u₀ sequence (u0[k] = u₀(x_k)).
RateReport sublinear_rate_from_values(const std::vector<double>& u0,
                                      const TheoryConstants& constants, double slack = 1e-9);

/// u₀ along the trace iterates (and the final iterate) by the grid oracle, then the
/// rate checks. Only n ≤ 2.
RateReport sublinear_rate_check(const CompositeProblem& problem, const Trace& trace,
                                const TheoryConstants& constants, int grid_points = 4001,
                                const std::optional<MeritWindow>& window = std::nullopt,
                                double slack = 1e-9);

}  // namespace agcg

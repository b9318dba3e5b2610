#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agcg/config.hpp"
#include "agcg/problem.hpp"
#include "agcg/trace.hpp"

namespace agcg {

enum class SolverKind { Agcg, Pg };

std::string_view to_string(SolverKind kind);
SolverKind parse_solver_kind(std::string_view text);

struct SolverSettings {
  AgcgConfig agcg;
  PgConfig pg;
};

/// Runs one solver from x0; the single entry point the batch tools share.
Trace run_solver(const CompositeProblem& problem, const Vector& x0, SolverKind kind,
                 const SolverSettings& settings);

struct ParetoSample {
  int start_id = 0;
  Vector x0;
  Vector x_final;
  Vector V_final;
  RunStatus status = RunStatus::Failed;
  int iterations = 0;
  long compfun = 0;
  double wall_seconds = 0.0;
  double final_theta = 0.0;
  std::string message;
};

/// One run per start, results in start order. Runs execute on up to `threads`
/// workers (0 means hardware concurrency). A failing start is recorded with
/// status Failed and never stops the batch.
std::vector<ParetoSample> multi_start_pareto(const CompositeProblem& problem,
                                             const std::vector<Vector>& starts, SolverKind kind,
                                             const SolverSettings& settings, int threads = 0);

/// Pairs (a, b) where V[a] is below V[b] by more than `tol` in every component.
std::vector<std::pair<int, int>> strictly_dominated_pairs(const std::vector<Vector>& values,
                                                          double tol);

/// |√V₁ + √V₂ − 2|, the distance measure to the first benchmark's front.
double example1_front_residual(const Vector& V);

/// Random feasible starts for the benchmarks: c·e + U[−1, 1]ⁿ with c ~ U[−1, 3] on the
/// unconstrained benchmark, Dirichlet(1, …, 1) on the simplex.
std::vector<Vector> pareto_starts(const CompositeProblem& problem, int count, std::uint64_t seed);

/// Start for a timing run: U[0, 1]ⁿ, normalized onto the simplex when the region is one.
Vector bench_start(const CompositeProblem& problem, std::uint64_t seed, int repetition);

}  // namespace agcg

#include "agcg/pareto.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "agcg/pg.hpp"
#include "agcg/solver.hpp"

namespace agcg {

std::string_view to_string(SolverKind kind) { return kind == SolverKind::Agcg ? "agcg" : "pg"; }

SolverKind parse_solver_kind(std::string_view text) {
  if (text == "agcg") return SolverKind::Agcg;
  if (text == "pg") return SolverKind::Pg;
  throw ContractError(fmt::format("unknown solver '{}'", std::string(text)));
}

Trace run_solver(const CompositeProblem& problem, const Vector& x0, SolverKind kind,
                 const SolverSettings& settings) {
  return kind == SolverKind::Agcg ? agcg_run(problem, x0, settings.agcg)
                                  : pg_run(problem, x0, settings.pg);
}

std::vector<ParetoSample> multi_start_pareto(const CompositeProblem& problem,
                                             const std::vector<Vector>& starts, SolverKind kind,
                                             const SolverSettings& settings, int threads) {
  if (starts.empty()) throw ContractError("multi-start batch needs at least one start");
  std::vector<ParetoSample> samples(starts.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < starts.size(); i = next++) {
      ParetoSample& s = samples[i];
      s.start_id = static_cast<int>(i);
      s.x0 = starts[i];
      try {
        const Trace trace = run_solver(problem, starts[i], kind, settings);
        s.x_final = trace.final_x;
        s.V_final = trace.final_V;
        s.status = trace.status;
        s.iterations = trace.iterations();
        s.compfun = trace.value_evaluations;
        s.wall_seconds = trace.wall_seconds;
        s.final_theta = trace.final_theta;
        s.message = trace.message;
      } catch (const std::exception& error) {
        s.status = RunStatus::Failed;
        s.message = error.what();
      }
    }
  };

  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(starts.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return samples;
}

std::vector<std::pair<int, int>> strictly_dominated_pairs(const std::vector<Vector>& values,
                                                          double tol) {
  std::vector<std::pair<int, int>> pairs;
  const int count = static_cast<int>(values.size());
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      if (a == b || values[a].size() != values[b].size()) continue;
      if ((values[a].array() < values[b].array() - tol).all()) pairs.emplace_back(a, b);
    }
  }
  return pairs;
}

double example1_front_residual(const Vector& V) {
  if (V.size() != 2) throw ContractError("front residual needs a two-objective value");
  return std::abs(std::sqrt(std::max(V[0], 0.0)) + std::sqrt(std::max(V[1], 0.0)) - 2.0);
}

std::vector<Vector> pareto_starts(const CompositeProblem& problem, int count, std::uint64_t seed) {
  if (count < 1) throw ContractError("start count must be positive");
  const int n = problem.dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vector> starts;
  starts.reserve(count);
  const FeasibleRegion& region = problem.region();
  for (int s = 0; s < count; ++s) {
    Vector x(n);
    if (std::holds_alternative<UnitSimplex>(region)) {
      // Normalized exponentials are uniform on the simplex.
      for (int j = 0; j < n; ++j) x[j] = -std::log(1.0 - unit(rng));
      x /= x.sum();
    } else if (std::holds_alternative<WholeSpace>(region)) {
      const double center = -1.0 + 4.0 * unit(rng);
      for (int j = 0; j < n; ++j) x[j] = center - 1.0 + 2.0 * unit(rng);
    } else if (const Box* box = std::get_if<Box>(&region)) {
      for (int j = 0; j < n; ++j) {
        const double lo = std::isfinite(box->lower[j]) ? box->lower[j] : -1.0;
        const double hi = std::isfinite(box->upper[j]) ? box->upper[j] : lo + 4.0;
        x[j] = lo + (hi - lo) * unit(rng);
      }
    } else {
      throw ContractError("random starts are not available for polyhedral regions");
    }
    starts.push_back(std::move(x));
  }
  return starts;
}

Vector bench_start(const CompositeProblem& problem, std::uint64_t seed, int repetition) {
  std::seed_seq sequence{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(repetition)};
  std::mt19937_64 rng(sequence);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = problem.dimension();
  Vector x(n);
  for (int j = 0; j < n; ++j) x[j] = unit(rng);
  const FeasibleRegion& region = problem.region();
  if (std::holds_alternative<UnitSimplex>(region)) {
    x /= x.sum();
  } else if (const Box* box = std::get_if<Box>(&region)) {
    x = x.cwiseMax(box->lower).cwiseMin(box->upper);
  } else if (std::holds_alternative<Polyhedron>(region)) {
    throw ContractError("random starts are not available for polyhedral regions");
  }
  return x;
}

}  // namespace agcg

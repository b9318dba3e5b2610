#pragma once

#include <cstdint>
#include <random>

#include "agcg/lp.hpp"
#include "agcg/problem.hpp"

namespace agcg::testing {

inline Vector central_difference(const std::function<double(const Vector&)>& f, const Vector& x,
                                 double h = 1e-6) {
  Vector g(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Vector plus = x;
    Vector minus = x;
    plus[j] += h;
    minus[j] -= h;
    g[j] = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

inline Vector uniform_vector(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (int j = 0; j < n; ++j) v[j] = u(rng);
  return v;
}

/// Uniform point of the unit simplex (normalized exponentials).
inline Vector simplex_point(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> e(1.0);
  Vector v(n);
  for (int j = 0; j < n; ++j) v[j] = e(rng);
  return v / v.sum();
}

/// Random feasible point of either benchmark.
inline Vector feasible_point(const CompositeProblem& problem, std::mt19937_64& rng) {
  const int n = problem.dimension();
  if (std::holds_alternative<UnitSimplex>(problem.region())) return simplex_point(rng, n);
  return uniform_vector(rng, n, -1.0, 3.0);
}

/// θ for a problem with g ≡ 0, by vertex enumeration of the epigraph program in
/// (y, t). WholeSpace regions are cut by [−R, R]ⁿ as the library does. Built
/// independently of the library's own LP assembly.
inline double theta_by_enumeration(const CompositeProblem& problem, const Vector& x, double R) {
  const int n = problem.dimension();
  const Matrix J = eval_jacobian(problem, x);
  LinearProgram lp = LinearProgram::with_variables(n + 1);
  lp.objective[n] = 1.0;
  for (Eigen::Index i = 0; i < J.rows(); ++i) {
    Vector row(n + 1);
    row << J.row(i).transpose(), -1.0;
    lp.add_inequality(row, 0.0);
  }
  const auto& region = problem.region();
  if (std::holds_alternative<UnitSimplex>(region)) {
    for (int j = 0; j < n; ++j) lp.bounds[static_cast<std::size_t>(j)] = {-x[j], kInfinity};
    Vector sum = Vector::Ones(n + 1);
    sum[n] = 0.0;
    lp.add_equality(sum, 1.0 - x.sum());
  } else if (const auto* box = std::get_if<Box>(&region)) {
    for (int j = 0; j < n; ++j) {
      lp.bounds[static_cast<std::size_t>(j)] = {box->lower[j] - x[j], box->upper[j] - x[j]};
    }
  } else {
    for (int j = 0; j < n; ++j) lp.bounds[static_cast<std::size_t>(j)] = {-R, R};
  }
  // t is bounded below by the objective rows; a loose box keeps the oracle's
  // bounded-region precondition without cutting the optimum.
  const double t_bound = 10.0 * (J.cwiseAbs().rowwise().sum().maxCoeff() * (R + 2.0) + 1.0);
  lp.bounds[static_cast<std::size_t>(n)] = {-t_bound, t_bound};
  const LpSolution s = enumerate_vertices_oracle(lp);
  return std::min(0.0, s.value);
}

}  // namespace agcg::testing

#include <gtest/gtest.h>

#include <random>

#include "agcg/lp.hpp"

namespace agcg {
namespace {

LinearProgram single_box() {
  LinearProgram lp = LinearProgram::with_variables(1);
  lp.objective[0] = -1.0;
  lp.bounds[0] = {-1.0, 1.0};
  return lp;
}

LinearProgram epigraph() {
  // min t  s.t. 6y ≤ t, 2y ≤ t, y ∈ [−1, 1], t free
  LinearProgram lp = LinearProgram::with_variables(2);
  lp.objective << 0.0, 1.0;
  lp.add_inequality((Vector(2) << 6.0, -1.0).finished(), 0.0);
  lp.add_inequality((Vector(2) << 2.0, -1.0).finished(), 0.0);
  lp.bounds[0] = {-1.0, 1.0};
  return lp;
}

LinearProgram simplex_vertex() {
  LinearProgram lp = LinearProgram::with_variables(2);
  lp.objective << 1.0, 0.0;
  lp.add_equality(Vector::Ones(2), 1.0);
  lp.bounds[0] = {0.0, kInfinity};
  lp.bounds[1] = {0.0, kInfinity};
  return lp;
}

TEST(SolveLp, SingleVariableBox) {
  const LpSolution s = solve_lp(single_box());
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.point[0], 1.0, 1e-12);
  EXPECT_NEAR(s.value, -1.0, 1e-12);
}

TEST(SolveLp, EpigraphOfTwoLinearPieces) {
  const LpSolution s = solve_lp(epigraph());
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.point[0], -1.0, 1e-12);
  EXPECT_NEAR(s.point[1], -2.0, 1e-12);
  EXPECT_NEAR(s.value, -2.0, 1e-12);
}

TEST(SolveLp, SimplexVertex) {
  const LpSolution s = solve_lp(simplex_vertex());
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.point[0], 0.0, 1e-12);
  EXPECT_NEAR(s.point[1], 1.0, 1e-12);
  EXPECT_NEAR(s.value, 0.0, 1e-12);
}

TEST(SolveLp, DetectsInfeasible) {
  LinearProgram lp = LinearProgram::with_variables(1);
  lp.add_inequality(Vector::Ones(1), -1.0);
  lp.add_inequality(-Vector::Ones(1), -1.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Infeasible);
  EXPECT_EQ(enumerate_vertices_oracle(lp).status, LpStatus::Infeasible);
}

TEST(SolveLp, DetectsUnbounded) {
  LinearProgram lp = LinearProgram::with_variables(2);
  lp.objective << -1.0, 0.0;
  lp.bounds[0] = {0.0, kInfinity};
  lp.add_inequality((Vector(2) << 1.0, -1.0).finished(), 1.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Unbounded);
}

TEST(SolveLp, DimensionErrors) {
  LinearProgram lp = LinearProgram::with_variables(2);
  lp.ineq_matrix = Matrix::Ones(1, 3);
  lp.ineq_rhs = Vector::Ones(1);
  EXPECT_THROW(solve_lp(lp), ContractError);
  LinearProgram crossed = LinearProgram::with_variables(1);
  crossed.bounds[0] = {1.0, 0.0};
  EXPECT_THROW(solve_lp(crossed), ContractError);
  EXPECT_THROW(LinearProgram::with_variables(0), ContractError);
}

TEST(SolveLp, IsDeterministic) {
  const LpSolution a = solve_lp(epigraph());
  const LpSolution b = solve_lp(epigraph());
  EXPECT_EQ(a.point, b.point);
  EXPECT_EQ(a.pivots, b.pivots);
}

TEST(Oracle, SpecExamplesMatchSolver) {
  for (const LinearProgram& lp : {single_box(), epigraph(), simplex_vertex()}) {
    const LpSolution exact = enumerate_vertices_oracle(lp);
    const LpSolution s = solve_lp(lp);
    ASSERT_EQ(exact.status, LpStatus::Optimal);
    EXPECT_NEAR(exact.value, s.value, 1e-12);
    EXPECT_LE((exact.point - s.point).norm(), 1e-12);
  }
}

TEST(Oracle, ConstantObjectiveOverSimplex) {
  LinearProgram lp = LinearProgram::with_variables(3);
  lp.add_equality(Vector::Ones(3), 1.0);
  for (auto& b : lp.bounds) b = {0.0, kInfinity};
  const LpSolution exact = enumerate_vertices_oracle(lp);
  ASSERT_EQ(exact.status, LpStatus::Optimal);
  EXPECT_EQ(exact.value, 0.0);
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.value, 0.0, 1e-12);
}

TEST(Oracle, RejectsLargePrograms) {
  EXPECT_THROW(enumerate_vertices_oracle(LinearProgram::with_variables(13)), ContractError);
}

TEST(Oracle, RedundantEqualities) {
  LinearProgram lp = LinearProgram::with_variables(2);
  lp.objective << 1.0, 2.0;
  lp.add_equality(Vector::Ones(2), 1.0);
  lp.add_equality(2.0 * Vector::Ones(2), 2.0);
  for (auto& b : lp.bounds) b = {0.0, 1.0};
  const LpSolution exact = enumerate_vertices_oracle(lp);
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(exact.status, LpStatus::Optimal);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(exact.value, 1.0, 1e-12);
  EXPECT_NEAR(s.value, 1.0, 1e-12);
}

// Random bounded programs: boxed variables plus random rows, some equalities,
// some infeasible by construction.
TEST(SolveLp, AgreesWithVertexEnumerationOnRandomPrograms) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_int_distribution<int> rows(0, 5);
  std::uniform_int_distribution<int> eqs(0, 2);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> width(0.0, 3.0);
  int optimal = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = dim(rng);
    LinearProgram lp = LinearProgram::with_variables(n);
    for (int j = 0; j < n; ++j) {
      lp.objective[j] = coef(rng);
      const double lo = coef(rng);
      lp.bounds[static_cast<std::size_t>(j)] = {lo, lo + width(rng)};
    }
    for (int r = rows(rng); r > 0; --r) {
      Vector a(n);
      for (int j = 0; j < n; ++j) a[j] = coef(rng);
      lp.add_inequality(a, coef(rng));
    }
    for (int r = std::min(eqs(rng), n - 1); r > 0; --r) {
      Vector a(n);
      for (int j = 0; j < n; ++j) a[j] = coef(rng);
      lp.add_equality(a, coef(rng) * 0.5);
    }
    const LpSolution exact = enumerate_vertices_oracle(lp);
    const LpSolution s = solve_lp(lp);
    ASSERT_EQ(s.status, exact.status) << "trial " << trial;
    if (s.status == LpStatus::Optimal) {
      ++optimal;
      EXPECT_NEAR(s.value, exact.value, 1e-8) << "trial " << trial;
    } else {
      ++infeasible;
    }
  }
  EXPECT_GT(optimal, 50);
  EXPECT_GT(infeasible, 10);
}

TEST(SolveLp, OptimalPointIsFeasible) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    LinearProgram lp = LinearProgram::with_variables(4);
    for (int j = 0; j < 4; ++j) {
      lp.objective[j] = coef(rng);
      lp.bounds[static_cast<std::size_t>(j)] = {-1.0, 1.0};
    }
    for (int r = 0; r < 3; ++r) {
      Vector a(4);
      for (int j = 0; j < 4; ++j) a[j] = coef(rng);
      lp.add_inequality(a, 0.5);
    }
    const LpSolution s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_LE((lp.ineq_matrix * s.point - lp.ineq_rhs).maxCoeff(), 1e-9);
    EXPECT_LE(s.point.cwiseAbs().maxCoeff(), 1.0 + 1e-9);
    EXPECT_NEAR(s.value, lp.objective.dot(s.point), 1e-12);
  }
}

}  // namespace
}  // namespace agcg

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "agcg/problem.hpp"
#include "agcg/region.hpp"
#include "support.hpp"

namespace agcg {
namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

CompositeProblem identity_example2() { return make_problem(example2_data(Matrix::Identity(2, 2), vec({1.0, -1.0}))); }

TEST(EvalV, ExampleOneHandValues) {
  const auto p = make_example1(1);
  EXPECT_TRUE(eval_V(p, vec({0.0})).isApprox(vec({0.0, 4.0})));
  EXPECT_TRUE(eval_V(p, vec({2.0})).isApprox(vec({4.0, 0.0})));
  EXPECT_TRUE(eval_V(p, vec({1.0})).isApprox(vec({1.0, 1.0})));
  EXPECT_TRUE(eval_V(make_example1(3), Vector::Zero(3)).isApprox(vec({0.0, 4.0})));
}

TEST(EvalV, RejectsWrongLength) {
  const auto p = make_example1(2);
  EXPECT_THROW(eval_V(p, Vector::Zero(3)), ContractError);
  EXPECT_THROW(eval_jacobian(p, Vector::Zero(1)), ContractError);
}

TEST(EvalV, InfeasiblePointGivesInfinity) {
  const auto p = make_example2(3, 1);
  const Vector V = eval_V(p, vec({1.0, 1.0, 1.0}));
  EXPECT_TRUE(std::isinf(V[0]) && V[0] > 0);
  EXPECT_TRUE(std::isinf(V[1]) && V[1] > 0);
}

TEST(EvalV, SumsComponentsExactly) {
  std::mt19937_64 rng(3);
  for (const auto& p : {make_example1(4), make_example2(4, 9)}) {
    for (int s = 0; s < 20; ++s) {
      const Vector x = testing::feasible_point(p, rng);
      const Vector V = eval_V(p, x);
      for (int i = 0; i < p.objectives(); ++i) EXPECT_EQ(V[i], p.eval_f(i, x) + p.eval_g(i, x));
    }
  }
}

TEST(Jacobian, ExampleOneRows) {
  Matrix J = eval_jacobian(make_example1(1), vec({1.0}));
  EXPECT_DOUBLE_EQ(J(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(J(1, 0), -2.0);
  J = eval_jacobian(make_example1(2), Vector::Zero(2));
  EXPECT_TRUE(J.row(0).isZero());
  EXPECT_TRUE(J.row(1).isApprox(vec({-2.0, -2.0}).transpose()));
}

TEST(Jacobian, ExampleTwoIdentityRows) {
  const Matrix J = eval_jacobian(identity_example2(), vec({0.5, 0.5}));
  EXPECT_TRUE(J.row(0).isApprox(vec({1.0, -1.0}).transpose()));
  EXPECT_TRUE(J.row(1).isApprox(vec({1.0, 1.0}).transpose()));
}

TEST(Jacobian, MatchesCentralDifferences) {
  std::mt19937_64 rng(11);
  for (const auto& p : {make_example1(5), make_example2(5, 4)}) {
    for (int s = 0; s < 100; ++s) {
      const Vector x = testing::feasible_point(p, rng);
      for (int i = 0; i < p.objectives(); ++i) {
        const Vector fd = testing::central_difference([&](const Vector& z) { return p.eval_f(i, z); }, x);
        const Vector g = p.grad_f(i, x);
        EXPECT_LE((fd - g).norm(), 1e-5 * std::max(1.0, g.norm()));
      }
    }
  }
}

TEST(CountingEvaluator, CountsValueAndJacobianSeparately) {
  const auto p = make_example1(2);
  CountingEvaluator ev(p);
  ev.V(Vector::Zero(2));
  ev.V(Vector::Ones(2));
  ev.jacobian(Vector::Zero(2));
  EXPECT_EQ(ev.value_evaluations(), 2);
  EXPECT_EQ(ev.jacobian_evaluations(), 1);
}

TEST(ExampleOne, Constants) {
  const auto p = make_example1(1);
  EXPECT_EQ(p.objectives(), 2);
  EXPECT_DOUBLE_EQ(*p.smooth_lipschitz(), 2.0);
  EXPECT_DOUBLE_EQ(*p.nonsmooth_lipschitz(), 0.0);
  EXPECT_DOUBLE_EQ(*make_example1(4).smooth_lipschitz(), 0.5);
  EXPECT_TRUE(std::holds_alternative<WholeSpace>(p.region()));
  EXPECT_THROW(make_example1(0), ContractError);
}

TEST(ExampleTwo, GeneratedDataContract) {
  for (std::uint64_t seed : {0ULL, 1ULL, 17ULL, 123456789ULL}) {
    const ProblemData d = example2_data(6, seed);
    const Matrix& A = d.objectives[1].quadratic;
    const Vector& b = d.objectives[0].linear;
    EXPECT_TRUE(A.isApprox(A.transpose(), 0.0));
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Matrix>(A).eigenvalues().minCoeff(), -1e-10);
    EXPECT_LE(A.cwiseAbs().maxCoeff(), 1.0);
    EXPECT_LE(b.cwiseAbs().maxCoeff(), 2.0);
    EXPECT_TRUE(std::holds_alternative<UnitSimplex>(d.region));
  }
  EXPECT_THROW(make_example2(1, 0), ContractError);
}

TEST(ExampleTwo, SameSeedSameData) {
  const ProblemData a = example2_data(5, 42);
  const ProblemData b = example2_data(5, 42);
  EXPECT_EQ(a.objectives[1].quadratic, b.objectives[1].quadratic);
  EXPECT_EQ(a.objectives[0].linear, b.objectives[0].linear);
  const ProblemData c = example2_data(5, 43);
  EXPECT_NE(a.objectives[1].quadratic, c.objectives[1].quadratic);
}

TEST(ExampleTwo, QuadraticIsConvex) {
  const auto p = make_example2(6, 8);
  std::mt19937_64 rng(5);
  for (int s = 0; s < 100; ++s) {
    const Vector x = testing::uniform_vector(rng, 6, -3.0, 3.0);
    EXPECT_GE(p.eval_f(1, x), -1e-12);
  }
}

TEST(ExampleTwo, ExplicitDataValidation) {
  EXPECT_THROW(example2_data(Matrix::Identity(3, 3), vec({1.0, 2.0})), ContractError);
  EXPECT_THROW(example2_data(Matrix::Identity(1, 1), vec({1.0})), ContractError);
}

TEST(Region, CheckRejectsMalformed) {
  EXPECT_THROW(check_region(Box{vec({1.0}), vec({0.0})}, 1), ContractError);
  EXPECT_THROW(check_region(Box{vec({0.0, 0.0}), vec({1.0, 1.0})}, 3), ContractError);
  Polyhedron bad;
  bad.ineq_matrix = Matrix::Ones(2, 2);
  bad.ineq_rhs = vec({1.0});
  bad.eq_matrix = Matrix(0, 2);
  bad.eq_rhs = Vector(0);
  EXPECT_THROW(check_region(bad, 2), ContractError);
  EXPECT_NO_THROW(check_region(UnitSimplex{}, 4));
}

TEST(Region, Membership) {
  EXPECT_TRUE(contains(UnitSimplex{}, vec({0.25, 0.75})));
  EXPECT_FALSE(contains(UnitSimplex{}, vec({0.5, 0.6})));
  EXPECT_FALSE(contains(UnitSimplex{}, vec({-0.1, 1.1})));
  EXPECT_TRUE(contains(Box{vec({0.0}), vec({1.0})}, vec({1.0})));
  EXPECT_FALSE(contains(Box{vec({0.0}), vec({1.0})}, vec({1.1})));
  EXPECT_TRUE(contains(WholeSpace{}, vec({1e300})));
}

TEST(Region, SimplexProjectionIsOptimal) {
  std::mt19937_64 rng(21);
  for (int s = 0; s < 200; ++s) {
    const Vector v = testing::uniform_vector(rng, 5, -2.0, 2.0);
    const Vector p = project_onto_simplex(v);
    ASSERT_TRUE(contains(UnitSimplex{}, p, 1e-12));
    // Variational inequality ⟨v − p, z − p⟩ ≤ 0 at every vertex z.
    for (int j = 0; j < 5; ++j) {
      EXPECT_LE((v - p).dot(Vector::Unit(5, j) - p), 1e-12);
    }
  }
}

}  // namespace
}  // namespace agcg

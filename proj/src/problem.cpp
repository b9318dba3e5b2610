#include "agcg/problem.hpp"

#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace agcg {

double QuadraticForm::value(const Vector& x) const {
  double v = constant;
  if (quadratic.size() > 0) {
    const Vector shifted = center.size() > 0 ? Vector(x - center) : x;
    v += shifted.dot(quadratic * shifted);
  }
  if (linear.size() > 0) v += linear.dot(x);
  return v;
}

Vector QuadraticForm::gradient(const Vector& x) const {
  Vector g = Vector::Zero(x.size());
  if (quadratic.size() > 0) {
    const Vector shifted = center.size() > 0 ? Vector(x - center) : x;
    g += (quadratic + quadratic.transpose()) * shifted;
  }
  if (linear.size() > 0) g += linear;
  return g;
}

double QuadraticForm::gradient_lipschitz() const {
  if (quadratic.size() == 0) return 0.0;
  const Matrix hessian = quadratic + quadratic.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hessian, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

double PolyhedralTerm::value(const Vector& x) const {
  if (pieces.empty()) return 0.0;
  double best = -kInfinity;
  for (const AffinePiece& piece : pieces) best = std::max(best, piece.slope.dot(x) + piece.offset);
  return best;
}

double PolyhedralTerm::lipschitz() const {
  double best = 0.0;
  for (const AffinePiece& piece : pieces) best = std::max(best, piece.slope.norm());
  return best;
}

CompositeProblem::CompositeProblem(int n, std::vector<SmoothTerm> smooth,
                                   std::vector<PolyhedralTerm> nonsmooth, FeasibleRegion region,
                                   std::optional<double> smooth_lipschitz,
                                   std::optional<double> nonsmooth_lipschitz)
    : n_(n),
      smooth_(std::move(smooth)),
      nonsmooth_(std::move(nonsmooth)),
      region_(std::move(region)),
      smooth_lipschitz_(smooth_lipschitz),
      nonsmooth_lipschitz_(nonsmooth_lipschitz) {
  if (n_ <= 0) throw ContractError("problem dimension must be positive");
  if (smooth_.empty()) throw ContractError("problem needs at least one objective");
  if (!nonsmooth_.empty() && nonsmooth_.size() != smooth_.size()) {
    throw ContractError("nonsmooth terms must be absent or one per objective");
  }
  for (const PolyhedralTerm& term : nonsmooth_) {
    for (const AffinePiece& piece : term.pieces) {
      if (piece.slope.size() != n_) throw ContractError("affine piece slope has wrong length");
    }
  }
  if (smooth_lipschitz_ && *smooth_lipschitz_ < 0) throw ContractError("L must be nonnegative");
  if (nonsmooth_lipschitz_ && *nonsmooth_lipschitz_ < 0) {
    throw ContractError("L_G must be nonnegative");
  }
  check_region(region_, n_);
}

void CompositeProblem::check_index(int i) const {
  if (i < 0 || i >= objectives()) {
    throw ContractError(fmt::format("objective index {} out of range [0, {})", i, objectives()));
  }
}

void CompositeProblem::check_point(const Vector& x) const {
  if (x.size() != n_) {
    throw ContractError(fmt::format("point has length {}, expected {}", x.size(), n_));
  }
}

double CompositeProblem::eval_f(int i, const Vector& x) const {
  check_index(i);
  check_point(x);
  return smooth_[i].value(x);
}

Vector CompositeProblem::grad_f(int i, const Vector& x) const {
  check_index(i);
  check_point(x);
  return smooth_[i].gradient(x);
}

double CompositeProblem::eval_g(int i, const Vector& x) const {
  check_index(i);
  check_point(x);
  if (!contains(region_, x)) return kInfinity;
  return nonsmooth_.empty() ? 0.0 : nonsmooth_[i].value(x);
}

const PolyhedralTerm* CompositeProblem::nonsmooth_term(int i) const {
  check_index(i);
  if (nonsmooth_.empty() || nonsmooth_[i].is_zero()) return nullptr;
  return &nonsmooth_[i];
}

CompositeProblem make_problem(const ProblemData& data) {
  if (data.n <= 0) throw ContractError("problem dimension must be positive");
  std::vector<SmoothTerm> smooth;
  double lipschitz = 0.0;
  for (const QuadraticForm& form : data.objectives) {
    if (form.quadratic.size() > 0 &&
        (form.quadratic.rows() != data.n || form.quadratic.cols() != data.n)) {
      throw ContractError("quadratic matrix must be n × n");
    }
    if (form.center.size() > 0 && form.center.size() != data.n) {
      throw ContractError("quadratic center must have length n");
    }
    if (form.linear.size() > 0 && form.linear.size() != data.n) {
      throw ContractError("linear coefficient must have length n");
    }
    smooth.push_back(SmoothTerm{[form](const Vector& x) { return form.value(x); },
                                [form](const Vector& x) { return form.gradient(x); }});
    lipschitz = std::max(lipschitz, form.gradient_lipschitz());
  }
  double nonsmooth_lipschitz = 0.0;
  for (const PolyhedralTerm& term : data.nonsmooth) {
    nonsmooth_lipschitz = std::max(nonsmooth_lipschitz, term.lipschitz());
  }
  CompositeProblem problem(data.n, std::move(smooth), data.nonsmooth, data.region, lipschitz,
                           nonsmooth_lipschitz);
  problem.data_ = data;
  return problem;
}

Vector eval_V(const CompositeProblem& problem, const Vector& x) {
  if (x.size() != problem.dimension()) {
    throw ContractError(
        fmt::format("point has length {}, expected {}", x.size(), problem.dimension()));
  }
  Vector v(problem.objectives());
  for (int i = 0; i < problem.objectives(); ++i) {
    v[i] = problem.eval_f(i, x) + problem.eval_g(i, x);
  }
  return v;
}

Matrix eval_jacobian(const CompositeProblem& problem, const Vector& x) {
  if (x.size() != problem.dimension()) {
    throw ContractError(
        fmt::format("point has length {}, expected {}", x.size(), problem.dimension()));
  }
  Matrix jac(problem.objectives(), problem.dimension());
  for (int i = 0; i < problem.objectives(); ++i) jac.row(i) = problem.grad_f(i, x).transpose();
  return jac;
}

Vector CountingEvaluator::V(const Vector& x) {
  ++value_evals_;
  return eval_V(*problem_, x);
}

Matrix CountingEvaluator::jacobian(const Vector& x) {
  ++jacobian_evals_;
  return eval_jacobian(*problem_, x);
}

ProblemData example1_data(int n) {
  if (n < 1) throw ContractError("example1 requires n >= 1");
  const Matrix scaled_identity = Matrix::Identity(n, n) / static_cast<double>(n);
  ProblemData data;
  data.name = "example1";
  data.n = n;
  data.objectives.push_back(QuadraticForm{scaled_identity, Vector::Zero(n), Vector(), 0.0});
  data.objectives.push_back(
      QuadraticForm{scaled_identity, Vector::Constant(n, 2.0), Vector(), 0.0});
  data.region = WholeSpace{};
  return data;
}

ProblemData example2_data(int n, std::uint64_t seed) {
  if (n < 2) throw ContractError("example2 requires n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = unit(rng);
  }
  Matrix gram = m.transpose() * m;
  gram = 0.5 * (gram + gram.transpose());
  const double scale = gram.cwiseAbs().maxCoeff();
  const Matrix a = gram / scale;

  Vector b(n);
  for (int r = 0; r < n; ++r) b[r] = 2.0 * unit(rng);

  ProblemData data = example2_data(a, b);
  data.seed = seed;
  return data;
}

ProblemData example2_data(const Matrix& a, const Vector& b) {
  const auto n = b.size();
  if (n < 2) throw ContractError("example2 requires n >= 2");
  if (a.rows() != n || a.cols() != n) throw ContractError("example2 matrix must be n × n");
  ProblemData data;
  data.name = "example2";
  data.n = static_cast<int>(n);
  data.objectives.push_back(QuadraticForm{Matrix(), Vector(), b, 0.0});
  data.objectives.push_back(QuadraticForm{a, Vector(), Vector(), 0.0});
  data.region = UnitSimplex{};
  return data;
}

CompositeProblem make_example1(int n) { return make_problem(example1_data(n)); }

CompositeProblem make_example2(int n, std::uint64_t seed) {
  return make_problem(example2_data(n, seed));
}

}  // namespace agcg

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "agcg/region.hpp"
#include "agcg/types.hpp"

namespace agcg {

/// f(x) = (x − center)ᵀ Q (x − center) + linearᵀx + constant, with Q symmetric.
struct QuadraticForm {
  Matrix quadratic;
  Vector center;
  Vector linear;
  double constant = 0.0;

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  /// Spectral norm of the Hessian 2Q, i.e. the Lipschitz constant of the gradient.
  double gradient_lipschitz() const;
};

struct AffinePiece {
  Vector slope;
  double offset = 0.0;
};

/// Convex piecewise-linear g(x) = max_k (slope_kᵀx + offset_k). No pieces means g ≡ 0.
struct PolyhedralTerm {
  std::vector<AffinePiece> pieces;

  bool is_zero() const { return pieces.empty(); }
  double value(const Vector& x) const;
  /// max_k ‖slope_k‖, the Lipschitz constant of g.
  double lipschitz() const;
};

struct SmoothTerm {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

/// Plain data describing a quadratic-objective problem; this is what gets
/// serialized to disk and what the benchmark generators produce.
struct ProblemData {
  std::string name = "custom";
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<QuadraticForm> objectives;
  /// Either empty (all g_i ≡ 0 on the region) or one term per objective.
  std::vector<PolyhedralTerm> nonsmooth;
  FeasibleRegion region = WholeSpace{};
};

/// V(x) = F(x) + G(x) over a feasible region. Immutable after construction and
/// safe to share between concurrent runs; evaluation counting lives in
/// CountingEvaluator.
class CompositeProblem {
 public:
  /// `nonsmooth` may be empty (g_i ≡ 0) or hold one term per smooth term.
  CompositeProblem(int n, std::vector<SmoothTerm> smooth, std::vector<PolyhedralTerm> nonsmooth,
                   FeasibleRegion region, std::optional<double> smooth_lipschitz,
                   std::optional<double> nonsmooth_lipschitz);

  int dimension() const { return n_; }
  int objectives() const { return static_cast<int>(smooth_.size()); }
  const FeasibleRegion& region() const { return region_; }
  std::optional<double> smooth_lipschitz() const { return smooth_lipschitz_; }
  std::optional<double> nonsmooth_lipschitz() const { return nonsmooth_lipschitz_; }

  double eval_f(int i, const Vector& x) const;
  Vector grad_f(int i, const Vector& x) const;
  /// g_i(x) on the region; +∞ outside it (indicator semantics).
  double eval_g(int i, const Vector& x) const;
  /// nullptr when g_i ≡ 0 on the region.
  const PolyhedralTerm* nonsmooth_term(int i) const;
  bool has_nonsmooth() const { return !nonsmooth_.empty(); }

  bool is_feasible(const Vector& x, double tol = 1e-9) const { return contains(region_, x, tol); }

  /// Set when the problem was built from ProblemData (required for serialization).
  const std::optional<ProblemData>& data() const { return data_; }
  std::string name() const { return data_ ? data_->name : std::string("custom"); }

  friend CompositeProblem make_problem(const ProblemData& data);

 private:
  void check_index(int i) const;
  void check_point(const Vector& x) const;

  int n_;
  std::vector<SmoothTerm> smooth_;
  std::vector<PolyhedralTerm> nonsmooth_;
  FeasibleRegion region_;
  std::optional<double> smooth_lipschitz_;
  std::optional<double> nonsmooth_lipschitz_;
  std::optional<ProblemData> data_;
};

CompositeProblem make_problem(const ProblemData& data);

/// V(x), length m. Entries may be +∞ when x leaves the region.
Vector eval_V(const CompositeProblem& problem, const Vector& x);

/// m × n matrix whose i-th row is ∇f_i(x).
Matrix eval_jacobian(const CompositeProblem& problem, const Vector& x);

/// Per-run wrapper that counts objective-vector and Jacobian evaluations.
class CountingEvaluator {
 public:
  explicit CountingEvaluator(const CompositeProblem& problem) : problem_(&problem) {}

  const CompositeProblem& problem() const { return *problem_; }
  Vector V(const Vector& x);
  Matrix jacobian(const Vector& x);

  long value_evaluations() const { return value_evals_; }
  long jacobian_evaluations() const { return jacobian_evals_; }

 private:
  const CompositeProblem* problem_;
  long value_evals_ = 0;
  long jacobian_evals_ = 0;
};

/// f₁ = ‖x‖²/n, f₂ = ‖x − 2e‖²/n, unconstrained.
ProblemData example1_data(int n);
/// f₁ = bᵀx, f₂ = xᵀAx over the unit simplex, A PSD with |A_lj| ≤ 1, |b_r| ≤ 2.
ProblemData example2_data(int n, std::uint64_t seed);
/// Example 2 with caller-supplied A and b (no seed).
ProblemData example2_data(const Matrix& a, const Vector& b);

CompositeProblem make_example1(int n);
CompositeProblem make_example2(int n, std::uint64_t seed);

}  // namespace agcg

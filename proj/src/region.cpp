#include "agcg/region.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "agcg/detail/overloaded.hpp"

namespace agcg {

using detail::Overloaded;

std::string_view region_kind(const FeasibleRegion& region) {
  return std::visit(Overloaded{
                        [](const WholeSpace&) { return std::string_view("whole_space"); },
                        [](const Box&) { return std::string_view("box"); },
                        [](const UnitSimplex&) { return std::string_view("unit_simplex"); },
                        [](const Polyhedron&) { return std::string_view("polyhedron"); },
                    },
                    region);
}

void check_region(const FeasibleRegion& region, int n) {
  if (n <= 0) throw ContractError("region dimension must be positive");
  std::visit(
      Overloaded{
          [](const WholeSpace&) {},
          [n](const Box& box) {
            if (box.lower.size() != n || box.upper.size() != n) {
              throw ContractError(fmt::format("box bounds must have length {}", n));
            }
            for (int j = 0; j < n; ++j) {
              if (!(box.lower[j] <= box.upper[j])) {
                throw ContractError(fmt::format("box lower[{}] > upper[{}]", j, j));
              }
            }
          },
          [](const UnitSimplex&) {},
          [n](const Polyhedron& poly) {
            if (poly.ineq_matrix.rows() > 0 && poly.ineq_matrix.cols() != n) {
              throw ContractError("polyhedron inequality matrix has wrong column count");
            }
            if (poly.eq_matrix.rows() > 0 && poly.eq_matrix.cols() != n) {
              throw ContractError("polyhedron equality matrix has wrong column count");
            }
            if (poly.ineq_rhs.size() != poly.ineq_matrix.rows() ||
                poly.eq_rhs.size() != poly.eq_matrix.rows()) {
              throw ContractError("polyhedron rhs length does not match row count");
            }
          },
      },
      region);
}

bool contains(const FeasibleRegion& region, const Vector& x, double tol) {
  if (!x.allFinite()) return false;
  return std::visit(
      Overloaded{
          [](const WholeSpace&) { return true; },
          [&](const Box& box) {
            return ((x - box.lower).array() >= -tol).all() &&
                   ((box.upper - x).array() >= -tol).all();
          },
          [&](const UnitSimplex&) {
            return (x.array() >= -tol).all() && std::abs(x.sum() - 1.0) <= tol;
          },
          [&](const Polyhedron& poly) {
            if (poly.nonneg && (x.array() < -tol).any()) return false;
            if (poly.ineq_matrix.rows() > 0 &&
                ((poly.ineq_matrix * x - poly.ineq_rhs).array() > tol).any()) {
              return false;
            }
            if (poly.eq_matrix.rows() > 0 &&
                ((poly.eq_matrix * x - poly.eq_rhs).array().abs() > tol).any()) {
              return false;
            }
            return true;
          },
      },
      region);
}

Vector project_onto_simplex(const Vector& v) {
  const Eigen::Index n = v.size();
  if (n == 0) throw ContractError("cannot project an empty vector onto the simplex");
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    cumulative += sorted[r];
    const double candidate = (cumulative - 1.0) / static_cast<double>(r + 1);
    if (sorted[r] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).max(0.0).matrix();
}

}  // namespace agcg

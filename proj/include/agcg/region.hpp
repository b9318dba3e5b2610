#pragma once

#include <string_view>
#include <variant>

#include "agcg/types.hpp"

namespace agcg {

struct WholeSpace {};

struct Box {
  Vector lower;
  Vector upper;
};

/// {x ⪰ 0 : Σ x_r = 1}
struct UnitSimplex {};

/// {x : ineq_matrix x ≤ ineq_rhs, eq_matrix x = eq_rhs, and x ⪰ 0 when nonneg}
struct Polyhedron {
  Matrix ineq_matrix;
  Vector ineq_rhs;
  Matrix eq_matrix;
  Vector eq_rhs;
  bool nonneg = false;
};

using FeasibleRegion = std::variant<WholeSpace, Box, UnitSimplex, Polyhedron>;

std::string_view region_kind(const FeasibleRegion& region);

/// Throws ContractError when the region is malformed for dimension n
/// (size mismatch, lower > upper, rhs/row count mismatch).
void check_region(const FeasibleRegion& region, int n);

/// Membership test with absolute tolerance `tol` on every constraint.
bool contains(const FeasibleRegion& region, const Vector& x, double tol = 1e-9);

/// Euclidean projection of v onto the unit simplex (sort-based).
Vector project_onto_simplex(const Vector& v);

}  // namespace agcg

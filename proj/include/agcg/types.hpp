#pragma once

#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace agcg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Raised when inputs violate a documented precondition (sizes, ranges).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure fails to finish (pivot cap, line-search cap).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace agcg

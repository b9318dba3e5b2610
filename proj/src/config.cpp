#include "agcg/config.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "agcg/types.hpp"

namespace agcg {

std::string_view to_string(StoppingRule rule) {
  switch (rule) {
    case StoppingRule::ThetaAbs:
      return "theta";
    case StoppingRule::PsiThetaNormalized:
      return "psitheta";
  }
  return "unknown";
}

StoppingRule parse_stopping_rule(std::string_view text) {
  if (text == "theta") return StoppingRule::ThetaAbs;
  if (text == "psitheta") return StoppingRule::PsiThetaNormalized;
  throw ContractError(fmt::format("unknown stopping rule '{}'", std::string(text)));
}

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw ContractError(message);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void AgcgConfig::validate() const {
  require(positive(epsilon0), "epsilon0 must be positive");
  require(beta > 0.0 && beta < 0.5, "beta must lie in (0, 1/2)");
  require(sigma_min > 0.0 && sigma_min <= 1.0, "sigma_min must lie in (0, 1]");
  require(positive(alpha_min), "alpha_min must be positive");
  require(positive(mu), "mu must be positive");
  require(positive(trust_radius), "trust_radius must be positive");
  require(max_iterations > 0, "max_iterations must be positive");
  require(max_linesearch > 0, "max_linesearch must be positive");
  require(critical_tolerance >= 0.0, "critical_tolerance must be nonnegative");
}

void PgConfig::validate() const {
  require(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
  require(shrink > 0.0 && shrink < 1.0, "shrink must lie in (0, 1)");
  require(positive(mu), "mu must be positive");
  require(max_iterations > 0, "max_iterations must be positive");
  require(max_linesearch > 0, "max_linesearch must be positive");
  require(positive(dual_tolerance), "dual_tolerance must be positive");
  require(max_dual_iterations > 0, "max_dual_iterations must be positive");
  require(critical_tolerance >= 0.0, "critical_tolerance must be nonnegative");
}

}  // namespace agcg

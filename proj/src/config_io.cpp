#include "agcg/config_io.hpp"

#include <set>
#include <string>

#include <fmt/format.h>

namespace agcg {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& known, const char* what) {
  if (!j.is_object()) throw ContractError(fmt::format("{} config must be a JSON object", what));
  for (const auto& item : j.items()) {
    if (known.count(item.key()) == 0) {
      throw ContractError(fmt::format("unknown {} config key '{}'", what, item.key()));
    }
  }
}

}  // namespace

Json agcg_config_to_json(const AgcgConfig& c) {
  return Json{{"epsilon0", c.epsilon0},
              {"beta", c.beta},
              {"sigma_min", c.sigma_min},
              {"alpha_min", c.alpha_min},
              {"mu", c.mu},
              {"trust_radius", c.trust_radius},
              {"max_iterations", c.max_iterations},
              {"max_linesearch", c.max_linesearch},
              {"stopping_rule", std::string(to_string(c.stopping_rule))},
              {"critical_tolerance", c.critical_tolerance}};
}

AgcgConfig agcg_config_from_json(const Json& j, const AgcgConfig& base) {
  reject_unknown(j,
                 {"epsilon0", "beta", "sigma_min", "alpha_min", "mu", "trust_radius",
                  "max_iterations", "max_linesearch", "stopping_rule", "critical_tolerance"},
                 "agcg");
  AgcgConfig c = base;
  c.epsilon0 = j.value("epsilon0", c.epsilon0);
  c.beta = j.value("beta", c.beta);
  c.sigma_min = j.value("sigma_min", c.sigma_min);
  c.alpha_min = j.value("alpha_min", c.alpha_min);
  c.mu = j.value("mu", c.mu);
  c.trust_radius = j.value("trust_radius", c.trust_radius);
  c.max_iterations = j.value("max_iterations", c.max_iterations);
  c.max_linesearch = j.value("max_linesearch", c.max_linesearch);
  if (j.contains("stopping_rule")) {
    c.stopping_rule = parse_stopping_rule(j.at("stopping_rule").get<std::string>());
  }
  c.critical_tolerance = j.value("critical_tolerance", c.critical_tolerance);
  return c;
}

Json pg_config_to_json(const PgConfig& c) {
  return Json{{"beta", c.beta},
              {"shrink", c.shrink},
              {"mu", c.mu},
              {"max_iterations", c.max_iterations},
              {"max_linesearch", c.max_linesearch},
              {"dual_tolerance", c.dual_tolerance},
              {"max_dual_iterations", c.max_dual_iterations},
              {"stopping_rule", std::string(to_string(c.stopping_rule))},
              {"critical_tolerance", c.critical_tolerance}};
}

PgConfig pg_config_from_json(const Json& j, const PgConfig& base) {
  reject_unknown(j,
                 {"beta", "shrink", "mu", "max_iterations", "max_linesearch", "dual_tolerance",
                  "max_dual_iterations", "stopping_rule", "critical_tolerance"},
                 "pg");
  PgConfig c = base;
  c.beta = j.value("beta", c.beta);
  c.shrink = j.value("shrink", c.shrink);
  c.mu = j.value("mu", c.mu);
  c.max_iterations = j.value("max_iterations", c.max_iterations);
  c.max_linesearch = j.value("max_linesearch", c.max_linesearch);
  c.dual_tolerance = j.value("dual_tolerance", c.dual_tolerance);
  c.max_dual_iterations = j.value("max_dual_iterations", c.max_dual_iterations);
  if (j.contains("stopping_rule")) {
    c.stopping_rule = parse_stopping_rule(j.at("stopping_rule").get<std::string>());
  }
  c.critical_tolerance = j.value("critical_tolerance", c.critical_tolerance);
  return c;
}

}  // namespace agcg

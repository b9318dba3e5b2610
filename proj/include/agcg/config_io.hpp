#pragma once

#include "agcg/config.hpp"
#include "agcg/problem_io.hpp"

namespace agcg {

Json agcg_config_to_json(const AgcgConfig& config);
/// Keys missing from `j` keep their value from `base`; unknown keys are rejected.
AgcgConfig agcg_config_from_json(const Json& j, const AgcgConfig& base = {});

Json pg_config_to_json(const PgConfig& config);
PgConfig pg_config_from_json(const Json& j, const PgConfig& base = {});

}  // namespace agcg

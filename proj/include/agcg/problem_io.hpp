#pragma once

#include <filesystem>

#include <json.hpp>

#include "agcg/problem.hpp"

namespace agcg {

using Json = nlohmann::json;

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json region_to_json(const FeasibleRegion& region);
FeasibleRegion region_from_json(const Json& j);

/// Structured text form: {"name","n","seed","region","objectives","nonsmooth"}.
Json problem_to_json(const ProblemData& data);
ProblemData problem_from_json(const Json& j);

void save_problem(const std::filesystem::path& path, const ProblemData& data);
ProblemData load_problem(const std::filesystem::path& path);

}  // namespace agcg

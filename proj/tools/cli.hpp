#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "agcg/config.hpp"
#include "agcg/problem_io.hpp"

namespace agcg::cli {

/// Fully resolved invocation: defaults, then a --config file, then flags.
struct RunSpec {
  std::string command;
  /// "example1", "example2", or a path to a problem JSON file.
  std::string problem = "example1";
  int n = 3;
  std::uint64_t seed = 0;
  /// "agcg", "pg" or "both".
  std::string solver = "agcg";
  AgcgConfig agcg;
  PgConfig pg;
  int starts = 100;
  int reps = 5;
  int threads = 0;
  std::optional<std::vector<double>> x0;
  std::string out;
  /// Input of `validate`.
  std::string trace_file;
};

Json run_spec_to_json(const RunSpec& spec);
/// Missing keys keep their value from `base`.
RunSpec run_spec_from_json(const Json& j, const RunSpec& base = {});

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kError = 2 };

/// Entry point shared by the executable and the tests. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agcg::cli

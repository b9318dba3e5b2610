#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "agcg/pareto.hpp"
#include "agcg/trace.hpp"

namespace agcg {

struct RunMetrics {
  int k = 0;
  double wall_seconds = 0.0;
  long compfun = 0;
};

RunMetrics metrics_of(const Trace& trace);

/// One bench table row; k, wall_seconds and compfun are means over the runs.
struct MetricsRow {
  std::string solver;
  std::string problem;
  int n = 0;
  double mu = 0.0;
  std::uint64_t seed = 0;
  double k = 0.0;
  double wall_seconds = 0.0;
  double compfun = 0.0;
};

/// Arithmetic means of k, wall_seconds and compfun. Throws on an empty run list.
MetricsRow aggregate_metrics(const std::string& solver, const std::string& problem, int n,
                             double mu, std::uint64_t seed, const std::vector<RunMetrics>& runs);

/// Shortest form with 9 significant digits.
std::string format_number(double value);

inline constexpr const char* kBenchHeader = "solver,problem,n,mu,seed,k,wall_seconds,compfun";
inline constexpr const char* kParetoHeader = "solver,problem,n,start_id,V1,V2,status,k";

void write_bench_csv(std::ostream& out, const std::vector<MetricsRow>& rows);
/// Two-objective samples only. `header` = false appends rows to an existing table.
void write_pareto_csv(std::ostream& out, const std::string& solver, const std::string& problem,
                      int n, const std::vector<ParetoSample>& samples, bool header = true);

}  // namespace agcg

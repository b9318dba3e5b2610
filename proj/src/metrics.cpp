#include "agcg/metrics.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace agcg {

RunMetrics metrics_of(const Trace& trace) {
  return RunMetrics{trace.iterations(), trace.wall_seconds, trace.value_evaluations};
}

MetricsRow aggregate_metrics(const std::string& solver, const std::string& problem, int n,
                             double mu, std::uint64_t seed, const std::vector<RunMetrics>& runs) {
  if (runs.empty()) throw ContractError("aggregate_metrics needs at least one run");
  MetricsRow row{solver, problem, n, mu, seed, 0.0, 0.0, 0.0};
  for (const RunMetrics& r : runs) {
    row.k += r.k;
    row.wall_seconds += r.wall_seconds;
    row.compfun += static_cast<double>(r.compfun);
  }
  const double count = static_cast<double>(runs.size());
  row.k /= count;
  row.wall_seconds /= count;
  row.compfun /= count;
  return row;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.9g}", value);
}

void write_bench_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
  out << kBenchHeader << '\n';
  for (const MetricsRow& r : rows) {
    out << fmt::format("{},{},{},{},{},{},{},{}\n", r.solver, r.problem, r.n,
                       format_number(r.mu), r.seed, format_number(r.k),
                       format_number(r.wall_seconds), format_number(r.compfun));
  }
}

void write_pareto_csv(std::ostream& out, const std::string& solver, const std::string& problem,
                      int n, const std::vector<ParetoSample>& samples, bool header) {
  if (header) out << kParetoHeader << '\n';
  for (const ParetoSample& s : samples) {
    const bool have = s.V_final.size() == 2;
    out << fmt::format("{},{},{},{},{},{},{},{}\n", solver, problem, n, s.start_id,
                       have ? format_number(s.V_final[0]) : "nan",
                       have ? format_number(s.V_final[1]) : "nan", to_string(s.status),
                       s.iterations);
  }
}

}  // namespace agcg

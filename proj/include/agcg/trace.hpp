#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "agcg/types.hpp"

namespace agcg {

enum class RunStatus { CriticalAtStep1, ToleranceMet, IterationCap, Failed };

/// "critical", "tolerance", "iteration_cap", "failed"
std::string_view to_string(RunStatus status);
RunStatus parse_run_status(std::string_view text);

/// One completed step. For proximal gradient traces `theta` holds the
/// subproblem value and ε fields are zero.
struct IterationRecord {
  int k = 0;
  Vector x;
  Vector y;
  Vector d;
  double t = 0.0;
  double xi = 1.0;
  double epsilon = 0.0;
  double epsilon_next = 0.0;
  int l = 0;
  double lambda = 1.0;
  double psi_y = 0.0;
  double psi_d = 0.0;
  double theta = 0.0;
  bool theta_truncated = false;
  double alpha = 0.0;
  double sigma = 1.0;
  Vector V;
  Vector V_next;
  long compfun_delta = 0;
};

struct Trace {
  std::string solver;  // "agcg" or "pg"
  Vector x0;
  std::vector<IterationRecord> records;
  RunStatus status = RunStatus::Failed;
  Vector final_x;
  Vector final_V;
  /// θ (or the PG subproblem value) at final_x, from the last subproblem solve.
  double final_theta = 0.0;
  bool final_theta_truncated = false;
  double final_psi = 0.0;
  double final_epsilon = 0.0;
  long value_evaluations = 0;
  long jacobian_evaluations = 0;
  long subproblem_solves = 0;
  double wall_seconds = 0.0;
  std::string message;

  int iterations() const { return static_cast<int>(records.size()); }
};

}  // namespace agcg

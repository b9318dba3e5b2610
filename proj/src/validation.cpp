#include "agcg/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "agcg/detail/overloaded.hpp"

namespace agcg {

using detail::Overloaded;

namespace {

class Accumulator {
 public:
  Accumulator(std::string name, double slack) : slack_(slack) { result_.name = std::move(name); }

  void add(double margin, int index) {
    ++result_.evaluated;
    if (std::isnan(margin) || margin < result_.worst_margin) {
      if (!std::isnan(result_.worst_margin)) {
        result_.worst_margin = margin;
        result_.worst_index = index;
      }
    }
    if (!(margin >= -slack_)) result_.passed = false;
  }

  CheckResult result() const { return result_; }

 private:
  double slack_;
  CheckResult result_;
};

CheckResult skipped_check(std::string name, std::string note) {
  CheckResult r;
  r.name = std::move(name);
  r.skipped = true;
  r.note = std::move(note);
  return r;
}

/// Tolerance-scaled agreement margin: positive when a and b agree to `tol` relative.
double agreement(double a, double b, double tol) {
  if (std::isinf(a) && a == b) return tol;
  return tol * std::max(1.0, std::abs(a)) - std::abs(a - b);
}

double agreement(const Vector& a, const Vector& b, double tol) {
  if (a.size() != b.size()) return -kInfinity;
  double worst = kInfinity;
  for (Eigen::Index i = 0; i < a.size(); ++i) worst = std::min(worst, agreement(a[i], b[i], tol));
  return worst;
}

}  // namespace

std::optional<TheoryConstants> theory_constants(const CompositeProblem& problem,
                                                const std::vector<const Trace*>& traces,
                                                const AgcgConfig& config) {
  if (!problem.smooth_lipschitz() || !problem.nonsmooth_lipschitz()) return std::nullopt;
  TheoryConstants c;
  c.L = *problem.smooth_lipschitz();
  c.L_G = *problem.nonsmooth_lipschitz();
  c.beta = config.beta;
  c.epsilon0 = config.epsilon0;
  c.sigma_min = config.sigma_min;
  const double q = 1.0 - 2.0 * c.beta;
  c.epsilon_bar = c.L / (2.0 * q);
  c.gamma = c.L > 0.0 ? std::min(2.0 * c.epsilon0 * q * q / c.L, q) : q;
  c.epsilon_bar_applies = 2.0 * c.epsilon0 < c.L;

  auto observe_gradient = [&](const Vector& x) {
    for (int i = 0; i < problem.objectives(); ++i) {
      c.rho = std::max(c.rho, problem.grad_f(i, x).norm());
    }
  };
  for (const Trace* trace : traces) {
    for (const IterationRecord& r : trace->records) {
      if (r.x.size() != problem.dimension() || r.y.size() != problem.dimension()) {
        throw ContractError("trace dimension does not match the problem");
      }
      c.delta = std::max(c.delta, r.y.norm());
      observe_gradient(r.x);
    }
  }

  c.tau_defined = c.delta > 0.0 && c.rho + c.L_G > 0.0;
  if (c.tau_defined) {
    c.tau = c.gamma / (c.delta * (c.rho + c.L_G));
    c.varpi = c.epsilon_bar_applies
                  ? std::min(c.tau, c.gamma / (c.epsilon_bar * c.delta * c.delta))
                  : c.tau;
  }
  return c;
}

std::optional<TheoryConstants> theory_constants(const CompositeProblem& problem,
                                                const Trace& trace, const AgcgConfig& config) {
  return theory_constants(problem, std::vector<const Trace*>{&trace}, config);
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.skipped || c.passed; });
}

std::vector<std::string> ValidationReport::failed_checks() const {
  std::vector<std::string> names;
  for (const CheckResult& c : checks) {
    if (!c.skipped && !c.passed) names.push_back(c.name);
  }
  return names;
}

std::vector<std::string> ValidationReport::skipped_checks() const {
  std::vector<std::string> names;
  for (const CheckResult& c : checks) {
    if (c.skipped) names.push_back(c.name);
  }
  return names;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const CheckResult& c : checks) {
    if (c.skipped) {
      out << fmt::format("SKIP {:<26} {}\n", c.name, c.note);
    } else if (c.evaluated == 0) {
      out << fmt::format("PASS {:<26} (no iterations)\n", c.name);
    } else {
      out << fmt::format("{} {:<26} worst margin {:.3e} at k={} over {} checks\n",
                         c.passed ? "PASS" : "FAIL", c.name, c.worst_margin, c.worst_index,
                         c.evaluated);
    }
  }
  return out.str();
}

ValidationReport validate_trace(const CompositeProblem& problem, const Trace& trace,
                                const AgcgConfig& config, double slack) {
  if (trace.solver != "agcg") {
    throw ContractError(fmt::format("cannot validate a '{}' trace against A-GCG lemmas",
                                    trace.solver));
  }
  const auto constants = theory_constants(problem, trace, config);
  const std::vector<IterationRecord>& records = trace.records;
  const int count = static_cast<int>(records.size());
  const double q = 1.0 - 2.0 * config.beta;
  const std::optional<double> L = problem.smooth_lipschitz();

  ValidationReport report;
  const std::string no_constants = "needs the Lipschitz constants L and L_G";
  const std::string no_bar = "needs 2·epsilon0 < L";

  {
    Accumulator acc("epsilon_monotone", slack);
    if (count > 0) acc.add(records[0].epsilon - config.epsilon0, 0);
    for (int k = 0; k < count; ++k) {
      acc.add(records[k].epsilon_next - records[k].epsilon, k);
      if (k + 1 < count) acc.add(records[k + 1].epsilon - records[k].epsilon_next, k + 1);
    }
    report.checks.push_back(acc.result());
  }

  if (constants && constants->epsilon_bar_applies) {
    Accumulator acc("epsilon_bound", slack);
    for (int k = 0; k < count; ++k) {
      acc.add(constants->epsilon_bar + 1e-12 - records[k].epsilon, k);
      acc.add(constants->epsilon_bar + 1e-12 - records[k].epsilon_next, k);
    }
    report.checks.push_back(acc.result());
  } else {
    report.checks.push_back(skipped_check("epsilon_bound", constants ? no_bar : no_constants));
  }

  {
    Accumulator acc("strict_decrease", slack);
    for (int k = 0; k < count; ++k) acc.add((records[k].V - records[k].V_next).minCoeff(), k);
    report.checks.push_back(acc.result());
  }

  auto decrease_check = [&](const std::string& name, bool applies, const std::string& why,
                            auto bound_of) {
    if (!applies) {
      report.checks.push_back(skipped_check(name, why));
      return;
    }
    Accumulator acc(name, slack);
    for (int k = 0; k < count; ++k) {
      const Vector change = records[k].V_next - records[k].V;
      acc.add(bound_of(records[k]) - change.maxCoeff(), k);
    }
    report.checks.push_back(acc.result());
  };
  const bool have = constants.has_value();
  const bool have_tau = have && constants->tau_defined;
  const std::string tau_why = have ? "tau undefined (no steps or zero gradients)" : no_constants;
  const double beta = config.beta;
  const double eps0 = config.epsilon0;

  decrease_check("decrease_gamma_psi", have, no_constants, [&](const IterationRecord& r) {
    return constants->gamma * beta * r.psi_d;
  });
  decrease_check("decrease_gamma_norm", have, no_constants, [&](const IterationRecord& r) {
    return -constants->gamma * beta * eps0 * r.d.squaredNorm();
  });
  decrease_check("decrease_tau_psi_squared", have_tau, tau_why, [&](const IterationRecord& r) {
    return -constants->tau * beta * r.psi_d * r.psi_d;
  });
  decrease_check("decrease_tau_norm_fourth", have_tau, tau_why, [&](const IterationRecord& r) {
    const double sq = r.d.squaredNorm();
    return -constants->tau * beta * eps0 * eps0 * sq * sq;
  });

  auto step_check = [&](const std::string& name, auto lower_of) {
    if (!have_tau) {
      report.checks.push_back(skipped_check(name, tau_why));
      return;
    }
    Accumulator acc(name, slack);
    for (int k = 0; k < count; ++k) acc.add(records[k].lambda - lower_of(records[k]), k);
    report.checks.push_back(acc.result());
  };
  step_check("step_bound_psi",
             [&](const IterationRecord& r) { return -constants->tau * r.psi_d; });
  step_check("step_bound_norm", [&](const IterationRecord& r) {
    return constants->tau * eps0 * r.d.squaredNorm();
  });

  decrease_check("decrease_varpi", have_tau && constants->epsilon_bar_applies,
                 have_tau ? no_bar : tau_why, [&](const IterationRecord& r) {
                   return -constants->varpi * beta * r.psi_y * r.psi_y;
                 });

  if (L && *L > 0.0) {
    Accumulator acc("linesearch_lower_bound", slack);
    for (int k = 0; k < count; ++k) {
      const IterationRecord& r = records[k];
      if (2.0 * r.epsilon < *L) acc.add(r.lambda - 2.0 * r.epsilon * q * q / *L, k);
    }
    report.checks.push_back(acc.result());
  } else {
    report.checks.push_back(skipped_check("linesearch_lower_bound", "needs L > 0"));
  }

  {
    Accumulator acc("direction_norm", slack);
    for (int k = 0; k < count; ++k) acc.add(records[k].y.norm() - records[k].d.norm(), k);
    report.checks.push_back(acc.result());
  }

  {
    Accumulator acc("normalized_descent", 1e-10);
    for (int k = 0; k < count; ++k) {
      const IterationRecord& r = records[k];
      acc.add(-(r.psi_d + r.epsilon * r.d.squaredNorm()), k);
    }
    report.checks.push_back(acc.result());
  }

  {
    Accumulator acc("step_form", 0.0);
    for (int k = 0; k < count; ++k) {
      const IterationRecord& r = records[k];
      double margin = agreement(std::pow(q, r.l), r.lambda, 1e-14);
      margin = std::min(margin, agreement(r.xi * r.y, r.d, 1e-14));
      margin = std::min(margin, agreement(r.epsilon * std::pow(q, 1 - r.l), r.epsilon_next, 1e-12));
      margin = std::min(margin, agreement(std::abs(r.psi_y), r.t, 1e-14));
      if (!(r.xi > 0.0 && r.xi <= 1.0) || r.l < 1) margin = -1.0;
      acc.add(margin, k);
    }
    report.checks.push_back(acc.result());
  }

  {
    Accumulator acceptance("armijo_acceptance", slack);
    Accumulator minimal("armijo_minimal", 0.0);
    Accumulator consistency("record_consistency", 0.0);
    Accumulator theta_sign("theta_nonpositive", 0.0);
    for (int k = 0; k < count; ++k) {
      const IterationRecord& r = records[k];
      if (r.x.size() != problem.dimension() || r.d.size() != problem.dimension() ||
          !problem.is_feasible(r.x)) {
        consistency.add(-1.0, k);
        continue;
      }
      const Matrix jacobian = eval_jacobian(problem, r.x);
      const Vector model = linear_model(problem, jacobian, r.x, r.d);
      const double norm_sq = r.d.squaredNorm();
      const Vector change = r.V_next - r.V;
      acceptance.add(
          (r.lambda * beta * (model.array() - r.epsilon * norm_sq) - change.array()).minCoeff(),
          k);
      for (int j = 1; j < r.l; ++j) {
        const double step = std::pow(q, j);
        const Vector trial = eval_V(problem, r.x + step * r.d);
        const bool accepted =
            ((trial - r.V).array() <= step * beta * (model.array() - r.epsilon * norm_sq)).all();
        minimal.add(accepted ? -1.0 : 0.0, k);
      }

      const double tol = 1e-9;
      double margin = agreement(eval_V(problem, r.x), r.V, tol);
      margin = std::min(margin, agreement(eval_V(problem, r.x + r.lambda * r.d), r.V_next, tol));
      margin = std::min(margin, agreement(psi(problem, jacobian, r.x, r.y), r.psi_y, tol));
      margin = std::min(margin, agreement(model.maxCoeff(), r.psi_d, tol));
      const Vector& next_x = k + 1 < count ? records[k + 1].x : trace.final_x;
      margin = std::min(margin, agreement(r.x + r.lambda * r.d, next_x, tol));
      if (k + 1 < count) margin = std::min(margin, agreement(r.V_next, records[k + 1].V, tol));
      consistency.add(margin, k);
      theta_sign.add(-r.theta, k);
    }
    if (trace.final_x.size() == problem.dimension()) theta_sign.add(-trace.final_theta, count);
    report.checks.push_back(acceptance.result());
    report.checks.push_back(minimal.result());
    report.checks.push_back(consistency.result());
    report.checks.push_back(theta_sign.result());
  }
  return report;
}

std::optional<Vector> objective_infima(const CompositeProblem& problem) {
  const auto& data = problem.data();
  if (!data || problem.has_nonsmooth()) return std::nullopt;
  const int n = data->n;
  Vector infima(static_cast<Eigen::Index>(data->objectives.size()));

  for (std::size_t i = 0; i < data->objectives.size(); ++i) {
    const QuadraticForm& form = data->objectives[i];
    const Matrix q = form.quadratic.size() > 0 ? form.quadratic : Matrix::Zero(n, n);
    if (q.size() > 0 &&
        Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (q + q.transpose())).eigenvalues().minCoeff() <
            -1e-10) {
      return std::nullopt;
    }
    const bool has_linear = form.linear.size() > 0 && form.linear.norm() > 0.0;

    // Projector onto the region and the smallest linear-model value over it.
    std::function<Vector(const Vector&)> project;
    std::function<double(const Vector&, const Vector&)> min_linear;
    Vector start;
    bool unsupported = false;
    bool solved = false;
    std::visit(Overloaded{
                   [&](const WholeSpace&) {
                     if (!has_linear) {
                       infima[i] = form.constant;
                       solved = true;
                     } else {
                       unsupported = true;
                     }
                   },
                   [&](const UnitSimplex&) {
                     project = [](const Vector& v) { return project_onto_simplex(v); };
                     min_linear = [](const Vector& g, const Vector& x) {
                       return g.minCoeff() - g.dot(x);
                     };
                     start = Vector::Constant(n, 1.0 / n);
                   },
                   [&](const Box& box) {
                     if (!box.lower.allFinite() || !box.upper.allFinite()) {
                       unsupported = true;
                       return;
                     }
                     project = [box](const Vector& v) {
                       return Vector(v.cwiseMax(box.lower).cwiseMin(box.upper));
                     };
                     min_linear = [box](const Vector& g, const Vector& x) {
                       double total = 0.0;
                       for (Eigen::Index j = 0; j < g.size(); ++j) {
                         total += std::min(g[j] * (box.lower[j] - x[j]),
                                           g[j] * (box.upper[j] - x[j]));
                       }
                       return total;
                     };
                     start = 0.5 * (box.lower + box.upper);
                   },
                   [&](const Polyhedron&) { unsupported = true; },
               },
               data->region);
    if (unsupported) return std::nullopt;
    if (solved) continue;

    // Accelerated projected gradient, then the conditional gradient gap gives a
    // certified lower bound f(x) + min_v ⟨∇f(x), v − x⟩ ≤ inf f.
    const double lipschitz = form.gradient_lipschitz();
    Vector x = start;
    Vector z = start;
    double t = 1.0;
    double lower = -kInfinity;
    for (int iter = 0; iter < 20000; ++iter) {
      const Vector g = form.gradient(x);
      lower = std::max(lower, form.value(x) + min_linear(g, x));
      if (form.value(x) - lower <= 1e-13 || lipschitz <= 0.0) break;
      const Vector next = project(z - form.gradient(z) / lipschitz);
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      z = next + ((t - 1.0) / t_next) * (next - x);
      z = project(z);
      x = next;
      t = t_next;
    }
    infima[i] = lower;
  }
  return infima;
}

ComplexityReport complexity_check(const std::vector<const Trace*>& traces, double mu,
                                  const TheoryConstants& constants, const Vector& V_inf,
                                  double slack) {
  if (!(mu > 0.0)) throw ContractError("mu must be positive");
  ComplexityReport report;
  const double scale = constants.varpi * constants.beta * constants.sigma_min;
  for (std::size_t index = 0; index < traces.size(); ++index) {
    const Trace& trace = *traces[index];
    ComplexityEntry entry;
    entry.trace_index = static_cast<int>(index);

    std::vector<double> thetas;
    bool truncated = trace.final_theta_truncated;
    for (const IterationRecord& r : trace.records) {
      thetas.push_back(r.theta);
      truncated = truncated || r.theta_truncated;
    }
    thetas.push_back(trace.final_theta);
    if (truncated) {
      entry.note = "theta values come from a truncated LP";
      ++report.skipped;
      report.entries.push_back(entry);
      continue;
    }
    for (std::size_t k = 0; k < thetas.size(); ++k) {
      if (std::abs(thetas[k]) <= mu) {
        entry.first_index = static_cast<int>(k);
        break;
      }
    }
    if (entry.first_index < 0) {
      entry.note = "never reached |theta| <= mu";
      ++report.skipped;
      report.entries.push_back(entry);
      continue;
    }

    const Vector& V0 = trace.records.empty() ? trace.final_V : trace.records.front().V;
    if (V0.size() != V_inf.size()) throw ContractError("V_inf length does not match m");
    const double gap = (V0 - V_inf).minCoeff();
    if (entry.first_index > 0 && !(scale > 0.0)) {
      entry.note = "varpi undefined";
      ++report.skipped;
      report.entries.push_back(entry);
      continue;
    }
    entry.bound = entry.first_index == 0 ? std::max(0.0, gap / (scale * mu * mu))
                                         : gap / (scale * mu * mu);
    entry.passed = entry.first_index <= entry.bound;
    for (std::size_t k = 0; k < trace.records.size(); ++k) {
      const IterationRecord& r = trace.records[k];
      const double margin = (r.V - r.V_next).minCoeff() - scale * r.theta * r.theta;
      entry.worst_summation_margin = std::min(entry.worst_summation_margin, margin);
    }
    if (!(entry.worst_summation_margin >= -slack)) entry.passed = false;
    report.passed = report.passed && entry.passed;
    report.entries.push_back(entry);
  }
  return report;
}

RateReport sublinear_rate_from_values(const std::vector<double>& u0,
                                      const TheoryConstants& constants, double slack) {
  RateReport report;
  report.u0 = u0;
  const double xi = constants.varpi * constants.beta * constants.sigma_min * constants.sigma_min;
  for (std::size_t k = 0; k + 1 < u0.size(); ++k) {
    report.worst_monotone_margin = std::min(report.worst_monotone_margin, u0[k] - u0[k + 1]);
  }
  report.monotone = report.worst_monotone_margin >= -slack;
  if (u0.size() > 1 && !(xi > 0.0)) {
    report.envelope = false;
    report.sequence_envelope = false;
    return report;
  }
  for (std::size_t k = 1; k < u0.size(); ++k) {
    const double kk = static_cast<double>(k);
    report.worst_envelope_margin =
        std::min(report.worst_envelope_margin, 1.0 / (xi * kk) - u0[k]);
    report.worst_sequence_margin = std::min(
        report.worst_sequence_margin, u0[0] / (1.0 + xi * u0[0] * kk) - u0[k]);
  }
  report.envelope = report.worst_envelope_margin > 0.0;
  report.sequence_envelope = report.worst_sequence_margin >= -slack;
  return report;
}

RateReport sublinear_rate_check(const CompositeProblem& problem, const Trace& trace,
                                const TheoryConstants& constants, int grid_points,
                                const std::optional<MeritWindow>& window, double slack) {
  std::vector<double> u0;
  for (const IterationRecord& r : trace.records) {
    u0.push_back(merit_u0_oracle(problem, r.x, grid_points, window).value);
  }
  u0.push_back(merit_u0_oracle(problem, trace.final_x, grid_points, window).value);
  return sublinear_rate_from_values(u0, constants, slack);
}

}  // namespace agcg

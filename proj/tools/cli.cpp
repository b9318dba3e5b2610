#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "agcg/config_io.hpp"
#include "agcg/metrics.hpp"
#include "agcg/pareto.hpp"
#include "agcg/problem_io.hpp"
#include "agcg/trace_io.hpp"
#include "agcg/validation.hpp"

namespace agcg::cli {

Json run_spec_to_json(const RunSpec& spec) {
  return Json{{"command", spec.command},
              {"problem", spec.problem},
              {"n", spec.n},
              {"seed", spec.seed},
              {"solver", spec.solver},
              {"agcg", agcg_config_to_json(spec.agcg)},
              {"pg", pg_config_to_json(spec.pg)},
              {"starts", spec.starts},
              {"reps", spec.reps},
              {"threads", spec.threads},
              {"x0", spec.x0 ? Json(*spec.x0) : Json()},
              {"out", spec.out},
              {"trace_file", spec.trace_file}};
}

RunSpec run_spec_from_json(const Json& j, const RunSpec& base) {
  if (!j.is_object()) throw ContractError("run spec must be a JSON object");
  RunSpec spec = base;
  spec.command = j.value("command", spec.command);
  spec.problem = j.value("problem", spec.problem);
  spec.n = j.value("n", spec.n);
  spec.seed = j.value("seed", spec.seed);
  spec.solver = j.value("solver", spec.solver);
  if (j.contains("agcg")) spec.agcg = agcg_config_from_json(j.at("agcg"), spec.agcg);
  if (j.contains("pg")) spec.pg = pg_config_from_json(j.at("pg"), spec.pg);
  spec.starts = j.value("starts", spec.starts);
  spec.reps = j.value("reps", spec.reps);
  spec.threads = j.value("threads", spec.threads);
  if (j.contains("x0")) {
    spec.x0 = j.at("x0").is_null() ? std::nullopt
                                    : std::optional(j.at("x0").get<std::vector<double>>());
  }
  spec.out = j.value("out", spec.out);
  spec.trace_file = j.value("trace_file", spec.trace_file);
  return spec;
}

namespace {

struct RawFlags {
  std::string problem;
  int n = 0;
  std::uint64_t seed = 0;
  double mu = 0.0;
  std::string solver;
  double epsilon0 = 0.0;
  double beta = 0.0;
  double sigma_min = 0.0;
  double alpha_min = 0.0;
  double trust_radius = 0.0;
  int starts = 0;
  int reps = 0;
  int threads = 0;
  int max_iterations = 0;
  std::vector<double> x0;
  std::string out;
  std::string stopping;
  std::string config;
  std::string trace_file;
};

using OptionMap = std::map<std::string, CLI::Option*>;

OptionMap add_flags(CLI::App* sub, RawFlags& raw) {
  OptionMap o;
  o["problem"] = sub->add_option("--problem", raw.problem,
                                 "example1, example2, or a problem JSON file");
  o["n"] = sub->add_option("--n", raw.n, "Dimension of a benchmark problem");
  o["seed"] = sub->add_option("--seed", raw.seed, "Seed for problem data and random starts");
  o["mu"] = sub->add_option("--mu", raw.mu, "Stopping tolerance");
  o["solver"] = sub->add_option("--solver", raw.solver, "agcg, pg or both")
                    ->check(CLI::IsMember({"agcg", "pg", "both"}));
  o["epsilon0"] = sub->add_option("--epsilon0", raw.epsilon0, "Initial epsilon");
  o["beta"] = sub->add_option("--beta", raw.beta, "Armijo parameter");
  o["sigma-min"] = sub->add_option("--sigma-min", raw.sigma_min, "Lower bound on sigma_k");
  o["alpha-min"] = sub->add_option("--alpha-min", raw.alpha_min, "Lower bound on alpha_k");
  o["trust-radius"] =
      sub->add_option("--trust-radius", raw.trust_radius, "Box radius for unbounded LPs");
  o["starts"] = sub->add_option("--starts", raw.starts, "Number of random starts");
  o["reps"] = sub->add_option("--reps", raw.reps, "Repetitions averaged per bench row");
  o["threads"] = sub->add_option("--threads", raw.threads, "Worker threads (0 = all cores)");
  o["max-iterations"] = sub->add_option("--max-iterations", raw.max_iterations, "Iteration cap");
  o["x0"] = sub->add_option("--x0", raw.x0, "Start point, comma separated")->delimiter(',');
  o["out"] = sub->add_option("--out", raw.out, "Output file");
  o["stopping"] = sub->add_option("--stopping", raw.stopping, "theta or psitheta")
                      ->check(CLI::IsMember({"theta", "psitheta"}));
  o["config"] = sub->add_option("--config", raw.config, "JSON run spec applied before flags");
  return o;
}

bool given(const OptionMap& o, const char* name) { return o.at(name)->count() > 0; }

RunSpec resolve(const std::string& command, const RawFlags& raw, const OptionMap& o) {
  RunSpec spec;
  spec.command = command;
  if (given(o, "config")) {
    std::ifstream in(raw.config);
    if (!in) throw std::runtime_error(fmt::format("cannot open config '{}'", raw.config));
    spec = run_spec_from_json(Json::parse(in), spec);
    spec.command = command;
  }
  if (given(o, "problem")) spec.problem = raw.problem;
  if (given(o, "n")) spec.n = raw.n;
  if (given(o, "seed")) spec.seed = raw.seed;
  if (given(o, "solver")) spec.solver = raw.solver;
  if (given(o, "mu")) spec.agcg.mu = spec.pg.mu = raw.mu;
  if (given(o, "epsilon0")) spec.agcg.epsilon0 = raw.epsilon0;
  if (given(o, "beta")) spec.agcg.beta = spec.pg.beta = raw.beta;
  if (given(o, "sigma-min")) spec.agcg.sigma_min = raw.sigma_min;
  if (given(o, "alpha-min")) spec.agcg.alpha_min = raw.alpha_min;
  if (given(o, "trust-radius")) spec.agcg.trust_radius = raw.trust_radius;
  if (given(o, "starts")) spec.starts = raw.starts;
  if (given(o, "reps")) spec.reps = raw.reps;
  if (given(o, "threads")) spec.threads = raw.threads;
  if (given(o, "max-iterations")) spec.agcg.max_iterations = spec.pg.max_iterations = raw.max_iterations;
  if (given(o, "x0")) spec.x0 = raw.x0;
  if (given(o, "out")) spec.out = raw.out;
  if (given(o, "stopping")) {
    spec.agcg.stopping_rule = spec.pg.stopping_rule = parse_stopping_rule(raw.stopping);
  }
  spec.trace_file = raw.trace_file;
  spec.agcg.validate();
  spec.pg.validate();
  if (spec.starts < 1) throw ContractError("--starts must be positive");
  if (spec.reps < 1) throw ContractError("--reps must be positive");
  return spec;
}

ProblemData problem_data(const RunSpec& spec) {
  if (spec.problem == "example1") return example1_data(spec.n);
  if (spec.problem == "example2") return example2_data(spec.n, spec.seed);
  return load_problem(spec.problem);
}

std::vector<SolverKind> solvers_of(const RunSpec& spec) {
  if (spec.solver == "both") return {SolverKind::Agcg, SolverKind::Pg};
  return {parse_solver_kind(spec.solver)};
}

SolverSettings settings_of(const RunSpec& spec) { return SolverSettings{spec.agcg, spec.pg}; }

Json config_json(const RunSpec& spec, SolverKind kind) {
  return kind == SolverKind::Agcg ? agcg_config_to_json(spec.agcg) : pg_config_to_json(spec.pg);
}

void write_meta(const RunSpec& spec, const ProblemData& data) {
  if (spec.out.empty()) return;
  std::ofstream meta(spec.out + ".meta.json");
  if (!meta) throw std::runtime_error(fmt::format("cannot write '{}.meta.json'", spec.out));
  meta << Json{{"run_spec", run_spec_to_json(spec)}, {"problem", problem_to_json(data)}}.dump(2)
       << '\n';
}

/// Runs `emit` against the --out file, or against `out` when no file was requested.
template <typename Emit>
void with_output(const RunSpec& spec, std::ostream& out, Emit emit) {
  if (spec.out.empty()) {
    emit(out);
    return;
  }
  std::ofstream file(spec.out);
  if (!file) throw std::runtime_error(fmt::format("cannot open '{}' for writing", spec.out));
  emit(file);
}

std::string join(const Vector& v) {
  std::string text;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) text += ',';
    text += format_number(v[i]);
  }
  return text;
}

int command_solve(const RunSpec& spec, std::ostream& out) {
  const std::vector<SolverKind> kinds = solvers_of(spec);
  if (kinds.size() != 1) throw ContractError("solve runs a single solver; use agcg or pg");
  const ProblemData data = problem_data(spec);
  const CompositeProblem problem = make_problem(data);
  Vector x0;
  if (spec.x0) {
    x0 = Eigen::Map<const Vector>(spec.x0->data(), static_cast<Eigen::Index>(spec.x0->size()));
  } else {
    x0 = bench_start(problem, spec.seed, 0);
  }
  const Trace trace = run_solver(problem, x0, kinds[0], settings_of(spec));
  if (!spec.out.empty()) {
    save_trace(spec.out, TraceFile{trace, data, config_json(spec, kinds[0])});
    write_meta(spec, data);
  }
  out << fmt::format(
      "solver={} status={} k={} theta={} psi={} V=[{}] x=[{}] compfun={} wall_seconds={}\n",
      trace.solver, to_string(trace.status), trace.iterations(), format_number(trace.final_theta),
      format_number(trace.final_psi), join(trace.final_V), join(trace.final_x),
      trace.value_evaluations, format_number(trace.wall_seconds));
  if (trace.status == RunStatus::Failed) {
    throw NumericalError(trace.message);
  }
  return kOk;
}

int command_pareto(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const ProblemData data = problem_data(spec);
  const CompositeProblem problem = make_problem(data);
  if (problem.objectives() != 2) throw ContractError("pareto output needs two objectives");
  const std::vector<Vector> starts = pareto_starts(problem, spec.starts, spec.seed);
  bool header = true;
  std::ostringstream table;
  for (SolverKind kind : solvers_of(spec)) {
    const auto samples = multi_start_pareto(problem, starts, kind, settings_of(spec), spec.threads);
    const auto failed = std::count_if(samples.begin(), samples.end(), [](const ParetoSample& s) {
      return s.status == RunStatus::Failed;
    });
    if (failed > 0) err << fmt::format("warning: {} {} runs failed\n", failed, to_string(kind));
    write_pareto_csv(table, std::string(to_string(kind)), data.name, data.n, samples, header);
    header = false;
  }
  with_output(spec, out, [&](std::ostream& o) { o << table.str(); });
  write_meta(spec, data);
  return kOk;
}

int command_bench(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const ProblemData data = problem_data(spec);
  const CompositeProblem problem = make_problem(data);
  std::vector<MetricsRow> rows;
  for (SolverKind kind : solvers_of(spec)) {
    std::vector<RunMetrics> runs;
    for (int rep = 0; rep < spec.reps; ++rep) {
      const Trace trace =
          run_solver(problem, bench_start(problem, spec.seed, rep), kind, settings_of(spec));
      if (trace.status == RunStatus::Failed || trace.status == RunStatus::IterationCap) {
        err << fmt::format("warning: {} repetition {} ended with status {}\n", to_string(kind),
                           rep, to_string(trace.status));
      }
      runs.push_back(metrics_of(trace));
    }
    const double mu = kind == SolverKind::Agcg ? spec.agcg.mu : spec.pg.mu;
    rows.push_back(
        aggregate_metrics(std::string(to_string(kind)), data.name, data.n, mu, spec.seed, runs));
  }
  with_output(spec, out, [&](std::ostream& o) { write_bench_csv(o, rows); });
  write_meta(spec, data);
  return kOk;
}

int command_validate(const RunSpec& spec, const OptionMap& o, std::ostream& out) {
  const TraceFile file = load_trace(spec.trace_file);
  ProblemData data;
  if (given(o, "problem") || given(o, "config") || !file.problem) {
    data = problem_data(spec);
  } else {
    data = *file.problem;
  }
  const CompositeProblem problem = make_problem(data);
  const AgcgConfig config = agcg_config_from_json(file.config);
  const ValidationReport report = validate_trace(problem, file.trace, config);
  out << report.to_text();
  if (report.passed()) {
    out << fmt::format("trace valid: {} iterations, status {}\n", file.trace.iterations(),
                       to_string(file.trace.status));
    return kOk;
  }
  std::string failed;
  for (const std::string& name : report.failed_checks()) failed += (failed.empty() ? "" : ", ") + name;
  out << fmt::format("trace INVALID: failed checks: {}\n", failed);
  return kValidationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive generalized conditional gradient for multiobjective problems", "agcg"};
  app.require_subcommand(1);

  std::map<std::string, std::pair<RawFlags, OptionMap>> flags;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    auto& [raw, options] = flags[name];
    options = add_flags(sub, raw);
    return sub;
  };
  add("solve", "Run one solver from one start and write its trace");
  add("pareto", "Sample the Pareto front from random starts (CSV)");
  add("bench", "Average iterations, time and V evaluations over repetitions (CSV)");
  CLI::App* validate = add("validate", "Check a trace file against the convergence lemmas");
  validate->add_option("trace", flags["validate"].first.trace_file, "Trace file (JSON Lines)")
      ->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    for (auto& [name, entry] : flags) {
      CLI::App* sub = app.get_subcommand(name);
      if (!sub->parsed()) continue;
      const RunSpec spec = resolve(name, entry.first, entry.second);
      if (name == "solve") return command_solve(spec, out);
      if (name == "pareto") return command_pareto(spec, out, err);
      if (name == "bench") return command_bench(spec, out, err);
      return command_validate(spec, entry.second, out);
    }
  } catch (const std::exception& error) {
    err << "error: " << error.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace agcg::cli

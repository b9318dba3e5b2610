#include "agcg/trace_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include <fmt/format.h>

namespace agcg {

namespace {

// JSON has no infinities or NaN; they are written as null and read back as NaN.
double number(const Json& j, const char* key) {
  const Json& v = j.at(key);
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

Vector numbers(const Json& j, const char* key) {
  const Json& arr = j.at(key);
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] =
        arr[i].is_null() ? std::numeric_limits<double>::quiet_NaN() : arr[i].get<double>();
  }
  return v;
}

Json finite(double value) { return std::isfinite(value) ? Json(value) : Json(); }

Json finite_vector(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(finite(v[i]));
  return out;
}

}  // namespace

Json record_to_json(const IterationRecord& r) {
  return Json{{"type", "iteration"},
              {"k", r.k},
              {"x", finite_vector(r.x)},
              {"y", finite_vector(r.y)},
              {"d", finite_vector(r.d)},
              {"t", finite(r.t)},
              {"xi", finite(r.xi)},
              {"epsilon", finite(r.epsilon)},
              {"epsilon_next", finite(r.epsilon_next)},
              {"l", r.l},
              {"lambda", finite(r.lambda)},
              {"psi_y", finite(r.psi_y)},
              {"psi_d", finite(r.psi_d)},
              {"theta", finite(r.theta)},
              {"theta_truncated", r.theta_truncated},
              {"alpha", finite(r.alpha)},
              {"sigma", finite(r.sigma)},
              {"V", finite_vector(r.V)},
              {"V_next", finite_vector(r.V_next)},
              {"compfun_delta", r.compfun_delta}};
}

IterationRecord record_from_json(const Json& j) {
  IterationRecord r;
  r.k = j.at("k").get<int>();
  r.x = numbers(j, "x");
  r.y = numbers(j, "y");
  r.d = numbers(j, "d");
  r.t = number(j, "t");
  r.xi = number(j, "xi");
  r.epsilon = number(j, "epsilon");
  r.epsilon_next = number(j, "epsilon_next");
  r.l = j.at("l").get<int>();
  r.lambda = number(j, "lambda");
  r.psi_y = number(j, "psi_y");
  r.psi_d = number(j, "psi_d");
  r.theta = number(j, "theta");
  r.theta_truncated = j.at("theta_truncated").get<bool>();
  r.alpha = number(j, "alpha");
  r.sigma = number(j, "sigma");
  r.V = numbers(j, "V");
  r.V_next = numbers(j, "V_next");
  r.compfun_delta = j.at("compfun_delta").get<long>();
  return r;
}

void write_trace(std::ostream& out, const TraceFile& file) {
  const Trace& trace = file.trace;
  Json header{{"type", "header"},
              {"solver", trace.solver},
              {"problem", file.problem ? problem_to_json(*file.problem) : Json()},
              {"config", file.config},
              {"x0", vector_to_json(trace.x0)}};
  out << header.dump() << '\n';
  for (const IterationRecord& record : trace.records) out << record_to_json(record).dump() << '\n';
  Json summary{{"type", "summary"},
               {"status", std::string(to_string(trace.status))},
               {"iterations", trace.iterations()},
               {"final_x", finite_vector(trace.final_x)},
               {"final_V", finite_vector(trace.final_V)},
               {"final_theta", finite(trace.final_theta)},
               {"final_theta_truncated", trace.final_theta_truncated},
               {"final_psi", finite(trace.final_psi)},
               {"final_epsilon", finite(trace.final_epsilon)},
               {"value_evaluations", trace.value_evaluations},
               {"jacobian_evaluations", trace.jacobian_evaluations},
               {"subproblem_solves", trace.subproblem_solves},
               {"wall_seconds", trace.wall_seconds},
               {"message", trace.message}};
  out << summary.dump() << '\n';
}

namespace {

void read_line(const Json& j, TraceFile& file, bool& have_header, bool& have_summary) {
  const std::string type = j.value("type", std::string());
  if (type == "header") {
    file.trace.solver = j.at("solver").get<std::string>();
    if (!j.at("problem").is_null()) file.problem = problem_from_json(j.at("problem"));
    file.config = j.value("config", Json::object());
    file.trace.x0 = numbers(j, "x0");
    have_header = true;
  } else if (type == "iteration") {
    if (!have_header) throw ContractError("trace iteration before header");
    file.trace.records.push_back(record_from_json(j));
  } else if (type == "summary") {
    Trace& t = file.trace;
    t.status = parse_run_status(j.at("status").get<std::string>());
    t.final_x = numbers(j, "final_x");
    t.final_V = numbers(j, "final_V");
    t.final_theta = number(j, "final_theta");
    t.final_theta_truncated = j.value("final_theta_truncated", false);
    t.final_psi = number(j, "final_psi");
    t.final_epsilon = number(j, "final_epsilon");
    t.value_evaluations = j.value("value_evaluations", 0L);
    t.jacobian_evaluations = j.value("jacobian_evaluations", 0L);
    t.subproblem_solves = j.value("subproblem_solves", 0L);
    t.wall_seconds = j.value("wall_seconds", 0.0);
    t.message = j.value("message", std::string());
    have_summary = true;
  } else {
    throw ContractError(fmt::format("unknown record type '{}'", type));
  }
}

}  // namespace

TraceFile read_trace(std::istream& in) {
  TraceFile file;
  bool have_header = false;
  bool have_summary = false;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      read_line(Json::parse(line), file, have_header, have_summary);
    } catch (const Json::exception& error) {
      throw ContractError(fmt::format("trace line {}: {}", line_number, error.what()));
    } catch (const ContractError& error) {
      throw ContractError(fmt::format("trace line {}: {}", line_number, error.what()));
    }
  }
  if (!have_header) throw ContractError("trace file has no header line");
  if (!have_summary) throw ContractError("trace file has no summary line");
  return file;
}

void save_trace(const std::filesystem::path& path, const TraceFile& file) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  write_trace(out, file);
}

TraceFile load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  return read_trace(in);
}

}  // namespace agcg

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "agcg/problem_io.hpp"
#include "agcg/trace.hpp"

namespace agcg {

/// Everything a trace file holds: the run, the problem it ran on (when the problem
/// came from ProblemData) and the solver configuration as written.
struct TraceFile {
  Trace trace;
  std::optional<ProblemData> problem;
  Json config = Json::object();
};

Json record_to_json(const IterationRecord& record);
IterationRecord record_from_json(const Json& j);

/// JSON Lines: a "header" line, one "iteration" line per record, a "summary" line.
void write_trace(std::ostream& out, const TraceFile& file);
TraceFile read_trace(std::istream& in);

void save_trace(const std::filesystem::path& path, const TraceFile& file);
TraceFile load_trace(const std::filesystem::path& path);

}  // namespace agcg

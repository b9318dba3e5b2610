#include "agcg/problem_io.hpp"

#include <fstream>

#include <fmt/format.h>

#include "agcg/detail/overloaded.hpp"

namespace agcg {

using detail::Overloaded;

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ContractError("expected a JSON array for a vector");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ContractError("expected a JSON array of rows for a matrix");
  if (j.empty()) return Matrix();
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) throw ContractError("ragged matrix rows");
    m.row(static_cast<Eigen::Index>(r)) = vector_from_json(j[r]).transpose();
  }
  return m;
}

Json region_to_json(const FeasibleRegion& region) {
  return std::visit(Overloaded{
                        [](const WholeSpace&) { return Json{{"kind", "whole_space"}}; },
                        [](const Box& box) {
                          return Json{{"kind", "box"},
                                      {"lower", vector_to_json(box.lower)},
                                      {"upper", vector_to_json(box.upper)}};
                        },
                        [](const UnitSimplex&) { return Json{{"kind", "unit_simplex"}}; },
                        [](const Polyhedron& p) {
                          return Json{{"kind", "polyhedron"},
                                      {"ineq_matrix", matrix_to_json(p.ineq_matrix)},
                                      {"ineq_rhs", vector_to_json(p.ineq_rhs)},
                                      {"eq_matrix", matrix_to_json(p.eq_matrix)},
                                      {"eq_rhs", vector_to_json(p.eq_rhs)},
                                      {"nonneg", p.nonneg}};
                        },
                    },
                    region);
}

FeasibleRegion region_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "whole_space") return WholeSpace{};
  if (kind == "unit_simplex") return UnitSimplex{};
  if (kind == "box") return Box{vector_from_json(j.at("lower")), vector_from_json(j.at("upper"))};
  if (kind == "polyhedron") {
    Polyhedron p;
    p.ineq_matrix = matrix_from_json(j.value("ineq_matrix", Json::array()));
    p.ineq_rhs = vector_from_json(j.value("ineq_rhs", Json::array()));
    p.eq_matrix = matrix_from_json(j.value("eq_matrix", Json::array()));
    p.eq_rhs = vector_from_json(j.value("eq_rhs", Json::array()));
    p.nonneg = j.value("nonneg", false);
    return p;
  }
  throw ContractError(fmt::format("unknown region kind '{}'", kind));
}

Json problem_to_json(const ProblemData& data) {
  Json objectives = Json::array();
  for (const QuadraticForm& form : data.objectives) {
    objectives.push_back(Json{{"quadratic", matrix_to_json(form.quadratic)},
                              {"center", vector_to_json(form.center)},
                              {"linear", vector_to_json(form.linear)},
                              {"constant", form.constant}});
  }
  Json nonsmooth = Json::array();
  for (const PolyhedralTerm& term : data.nonsmooth) {
    Json pieces = Json::array();
    for (const AffinePiece& piece : term.pieces) {
      pieces.push_back(Json{{"slope", vector_to_json(piece.slope)}, {"offset", piece.offset}});
    }
    nonsmooth.push_back(pieces);
  }
  return Json{{"name", data.name},         {"n", data.n},
              {"seed", data.seed},         {"region", region_to_json(data.region)},
              {"objectives", objectives}, {"nonsmooth", nonsmooth}};
}

ProblemData problem_from_json(const Json& j) {
  ProblemData data;
  data.name = j.value("name", std::string("custom"));
  data.n = j.at("n").get<int>();
  data.seed = j.value("seed", std::uint64_t{0});
  data.region = region_from_json(j.at("region"));
  for (const Json& o : j.at("objectives")) {
    QuadraticForm form;
    form.quadratic = matrix_from_json(o.value("quadratic", Json::array()));
    form.center = vector_from_json(o.value("center", Json::array()));
    form.linear = vector_from_json(o.value("linear", Json::array()));
    form.constant = o.value("constant", 0.0);
    data.objectives.push_back(std::move(form));
  }
  for (const Json& pieces : j.value("nonsmooth", Json::array())) {
    PolyhedralTerm term;
    for (const Json& piece : pieces) {
      term.pieces.push_back(
          AffinePiece{vector_from_json(piece.at("slope")), piece.value("offset", 0.0)});
    }
    data.nonsmooth.push_back(std::move(term));
  }
  return data;
}

void save_problem(const std::filesystem::path& path, const ProblemData& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  out << problem_to_json(data).dump(2) << '\n';
}

ProblemData load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  return problem_from_json(Json::parse(in));
}

}  // namespace agcg

#include "ctv/serialize.hpp"

#include <stdexcept>

namespace ctv {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t require_count(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw std::invalid_argument(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

Face face_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("face must be an array of vertex ids");
  Face f;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw std::invalid_argument("vertex ids must be non-negative integers");
    f.push_back(v.get<VertexId>());
  }
  return f;
}

}  // namespace

json complex_to_json(const SimplicialComplex& complex) {
  json facets = json::array();
  for (const auto& f : complex.facets()) facets.push_back(f);
  return json{{"n_vertices", complex.n_vertices()}, {"facets", std::move(facets)}};
}

SimplicialComplex complex_from_json(const json& j) {
  const std::size_t n = require_count(j, "n_vertices");
  const json& facets = require(j, "facets");
  if (!facets.is_array()) throw std::invalid_argument("'facets' must be an array");
  std::vector<Face> faces;
  for (const auto& f : facets) faces.push_back(face_from_json(f));
  return SimplicialComplex(n, std::move(faces));
}

json cell_complex_to_json(const CellComplex& cells) {
  json by_dim = json::array();
  for (const auto& layer : cells.cells_by_dim) {
    json l = json::array();
    for (const auto& cell : layer) l.push_back(cell);
    by_dim.push_back(std::move(l));
  }
  json boundary = json::array();
  for (const auto& layer : cells.boundary) {
    json l = json::array();
    for (const auto& e : layer) l.push_back({e.from, e.to, e.sign});
    boundary.push_back(std::move(l));
  }
  return json{{"factors", cells.factors}, {"cells_by_dim", std::move(by_dim)}, {"boundary", std::move(boundary)}};
}

CellComplex cell_complex_from_json(const json& j) {
  CellComplex out;
  out.factors = static_cast<std::uint32_t>(require_count(j, "factors"));
  for (const auto& layer : require(j, "cells_by_dim")) {
    std::vector<Cell> cells;
    for (const auto& cell : layer) {
      Cell c;
      for (const auto& f : cell) c.push_back(face_from_json(f));
      if (c.size() != out.factors) throw std::invalid_argument("cell has the wrong number of factors");
      cells.push_back(std::move(c));
    }
    out.cells_by_dim.push_back(std::move(cells));
  }
  for (const auto& layer : require(j, "boundary")) {
    std::vector<Incidence> entries;
    for (const auto& e : layer) {
      if (!e.is_array() || e.size() != 3) throw std::invalid_argument("incidence must be [from, to, sign]");
      entries.push_back({e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(), e[2].get<int>()});
    }
    out.boundary.push_back(std::move(entries));
  }
  if (out.boundary.size() != out.cells_by_dim.size())
    throw std::invalid_argument("boundary and cells_by_dim differ in length");
  for (std::size_t k = 1; k < out.boundary.size(); ++k)
    for (const auto& e : out.boundary[k])
      if (e.from >= out.cells_by_dim[k].size() || e.to >= out.cells_by_dim[k - 1].size())
        throw std::invalid_argument("incidence index out of range");
  return out;
}

Coloring coloring_from_json(const json& j) {
  const json& c = j.is_array() ? j : require(j, "colors");
  if (!c.is_array()) throw std::invalid_argument("'colors' must be an array");
  std::vector<int> colors;
  for (const auto& v : c) {
    if (!v.is_number_integer()) throw std::invalid_argument("colors must be integers");
    colors.push_back(v.get<int>());
  }
  return Coloring(std::move(colors));
}

json point_to_json(const Point& p) {
  json out = json::array();
  for (const auto& x : p) out.push_back(format_rational(x));
  return out;
}

Point point_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("point must be an array of rationals");
  Point p;
  for (const auto& x : j) {
    if (x.is_string()) p.push_back(parse_rational(x.get<std::string>()));
    else if (x.is_number_integer()) p.push_back(Rational(x.get<long>()));
    else throw std::invalid_argument("coordinates must be \"p/q\" strings or integers");
  }
  return p;
}

json configuration_to_json(const ColoredConfiguration& config) {
  json points = json::array();
  for (const auto& p : config.points) points.push_back(point_to_json(p));
  return json{{"d", config.d},
              {"r", config.r},
              {"target", config.target == Target::torus ? "torus" : "euclidean"},
              {"points", std::move(points)},
              {"colors", config.coloring.colors()}};
}

ColoredConfiguration configuration_from_json(const json& j) {
  ColoredConfiguration c;
  c.d = require_count(j, "d");
  c.r = static_cast<std::uint32_t>(require_count(j, "r"));
  if (j.contains("target")) {
    const std::string t = j.at("target").get<std::string>();
    if (t == "euclidean") c.target = Target::euclidean;
    else if (t == "torus") c.target = Target::torus;
    else throw std::invalid_argument("target must be 'euclidean' or 'torus'");
  }
  for (const auto& p : require(j, "points")) c.points.push_back(point_from_json(p));
  c.coloring = coloring_from_json(require(j, "colors"));
  c.validate();
  return c;
}

const char* outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::found: return "FOUND";
    case Outcome::none: return "NONE";
    case Outcome::budget_exhausted: return "BUDGET_EXHAUSTED";
  }
  return "?";
}

json report_to_json(const TverbergReport& report) {
  json out{{"outcome", outcome_name(report.outcome)},
           {"partitions_examined", report.partitions_examined},
           {"exhaustive", report.exhaustive},
           {"warnings", report.warnings}};
  if (report.partition) {
    const auto& p = *report.partition;
    out["parts"] = p.parts;
    out["witness"] = point_to_json(p.witness);
    out["translates"] = p.translates;
    json weights = json::array();
    for (const auto& w : p.weights) weights.push_back(point_to_json(w));
    out["weights"] = std::move(weights);
  }
  return out;
}

json homology_to_json(const BettiProfile& profile, long long euler) {
  std::vector<std::size_t> from_zero;
  for (std::size_t i = 1; i < profile.reduced.size(); ++i) from_zero.push_back(profile.reduced[i]);
  return json{{"p", profile.p}, {"reduced_betti", from_zero}, {"euler", euler}};
}

}  // namespace ctv

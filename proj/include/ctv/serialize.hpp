#pragma once

// JSON file formats.
//
//   complex        {"n_vertices": n, "facets": [[...], ...]}   facets lexicographic
//   colors         {"colors": [c_0, ..., c_{n-1}]}
//   cell complex   {"factors": r, "cells_by_dim": [[cell, ...], ...],
//                   "boundary": [[], [[from, to, sign], ...], ...]}
//                  where a cell is a list of r faces and boundary[k] maps
//                  dimension k to k-1 by per-dimension cell index
//   configuration  {"d": 2, "r": 3, "target": "euclidean"|"torus",
//                   "points": [["1/2", "3/4"], ...], "colors": [...]}
//   homology       {"p": p, "reduced_betti": [b̃_0, ..., b̃_top], "euler": χ}

#include "json.hpp"

#include "ctv/complex.hpp"
#include "ctv/constructions.hpp"
#include "ctv/geometry.hpp"
#include "ctv/homology.hpp"

namespace ctv {

using nlohmann::json;

json complex_to_json(const SimplicialComplex& complex);
SimplicialComplex complex_from_json(const json& j);

json cell_complex_to_json(const CellComplex& cells);
CellComplex cell_complex_from_json(const json& j);

Coloring coloring_from_json(const json& j);

json point_to_json(const Point& p);
Point point_from_json(const json& j);

json configuration_to_json(const ColoredConfiguration& config);
ColoredConfiguration configuration_from_json(const json& j);

const char* outcome_name(Outcome outcome);

// Everything except timing; byte-stable for a given search.
json report_to_json(const TverbergReport& report);

json homology_to_json(const BettiProfile& profile, long long euler);

}  // namespace ctv

#pragma once

// Construction descriptors: nested JSON objects naming a construction and its
// arguments. Grammar (every "arg"/"args" entry is itself a descriptor):
//
//   {"op":"simplex","n":N}             Δ_N (N+1 vertices)
//   {"op":"boundary","n":N}            ∂Δ_N
//   {"op":"points","n":k}              k isolated vertices; "s0" is points:2
//   {"op":"cycle","n":k}
//   {"op":"chessboard","rows":r,"cols":k}
//   {"op":"join","args":[A,B,...]}
//   {"op":"join_power","arg":A,"r":r}
//   {"op":"deleted_join","arg":A,"r":r,"l":l}
//   {"op":"deleted_product","arg":A,"r":r,"l":l}     yields a cell complex
//   {"op":"rainbow","colors":[...]}
//   {"op":"test_space","colors":[...],"r":r}
//   {"op":"complex","n_vertices":n,"facets":[...]}   inline complex
//   {"op":"file","path":"..."}                       complex file
//
// Short operand strings: simplex:N, boundary:N, points:k, s0, cycle:k,
// chessboard:R,K, file:PATH, or a literal JSON descriptor.

#include <string_view>
#include <variant>

#include "ctv/serialize.hpp"

namespace ctv {

using Built = std::variant<SimplicialComplex, CellComplex>;

json parse_operand(std::string_view text);

Built build(const json& descriptor);

// Like build, but rejects descriptors that yield a cell complex.
SimplicialComplex build_simplicial(const json& descriptor);

}  // namespace ctv

#pragma once

// Joins, chessboard complexes, deleted joins and deleted products, the test
// space K, and the cyclic shift of join copies.
//
// Labeling conventions (stable, relied on by golden files and tests):
//   joins        copy-major: copy 0's vertices first in original order, then copy 1, ...
//   chessboards  column-major: vertex id = col * rows + row
//   test space   factors in increasing color order; within factor i the
//                chessboard Δ_{r,|C_i|} with column c standing for the c-th
//                smallest vertex of C_i and row j for join copy j.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ctv/complex.hpp"

namespace ctv {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JoinLabel {
  std::uint32_t copy = 0;
  VertexId vertex = 0;
  friend bool operator==(const JoinLabel&, const JoinLabel&) = default;
};

struct LabeledJoinComplex {
  SimplicialComplex complex;
  std::vector<JoinLabel> factor_of;  // indexed by vertex id of `complex`
  std::uint32_t copies = 0;

  // Vertex id carrying label (copy, vertex), if any.
  std::optional<VertexId> find(std::uint32_t copy, VertexId vertex) const;
};

SimplicialComplex chessboard(std::size_t rows, std::size_t cols);

LabeledJoinComplex join(const SimplicialComplex& x, const SimplicialComplex& y);
LabeledJoinComplex join_all(const std::vector<SimplicialComplex>& factors);

// Full r-fold join X * ... * X.
LabeledJoinComplex join_power(const SimplicialComplex& x, std::uint32_t r);

// Keeps F_1 * ... * F_r iff no vertex lies in l or more of the F_i. Requires
// r >= 2, 2 <= l <= r and X on at most 64 vertices.
LabeledJoinComplex deleted_join(const SimplicialComplex& x, std::uint32_t r, std::uint32_t l);

// r-tuple of nonempty faces.
using Cell = std::vector<Face>;

struct Incidence {
  std::uint32_t from = 0;  // index into cells_by_dim[k]
  std::uint32_t to = 0;    // index into cells_by_dim[k - 1]
  int sign = 1;
};

struct CellComplex {
  std::uint32_t factors = 0;
  std::vector<std::vector<Cell>> cells_by_dim;     // canonical (lexicographic) order per dimension
  std::vector<std::vector<Incidence>> boundary;    // boundary[k]: dim k -> dim k-1; boundary[0] empty

  int dim() const { return static_cast<int>(cells_by_dim.size()) - 1; }
  std::vector<std::size_t> f_vector() const;
  long long euler_characteristic() const;
};

int cell_dim(const Cell& cell);

// Product cells F_1 x ... x F_r with nonempty, l-wise disjoint F_i and Leibniz
// boundary: the i-th factor term carries (-1)^(dim F_1 + ... + dim F_{i-1}).
CellComplex deleted_product(const SimplicialComplex& x, std::uint32_t r, std::uint32_t l);

// True iff every composite boundary[k-1] * boundary[k] vanishes mod p.
bool boundary_squares_to_zero(const CellComplex& cells, unsigned p);

// K = Δ_{r,|C_0|} * ... * Δ_{r,|C_m|}, labeled by (row = copy, original vertex).
LabeledJoinComplex test_space_K(const Coloring& coloring, std::uint32_t r);

// Vertex map from deleted_join(rainbow_subcomplex(coloring), r, 2) to
// test_space_K(coloring, r): (copy j, vertex v = c-th element of C_i) goes to
// the cell (row j, col c) of the i-th chessboard factor.
std::vector<VertexId> rainbow_to_test_space(const Coloring& coloring, std::uint32_t r);

// True iff `map` is a bijection on vertices carrying the facets of `a` onto
// exactly the facets of `b`.
bool is_isomorphism(const SimplicialComplex& a, const SimplicialComplex& b,
                    const std::vector<VertexId>& map);

struct CyclicAction {
  std::uint32_t order = 0;
  std::vector<VertexId> generator;  // generator[v] = image of v

  std::vector<VertexId> power(std::uint32_t k) const;
  Face apply(const Face& f, std::uint32_t k = 1) const;
};

// Shift (copy j, v) -> (copy j+1 mod r, v). Throws ConstructionError if a
// shifted label does not exist or a facet is not carried to a facet.
CyclicAction cyclic_action(const LabeledJoinComplex& j);

struct FreenessResult {
  bool free = true;
  Face witness;             // invariant nonempty face, when !free
  std::uint32_t power = 0;  // group element g^power fixing the witness
};

// A nonempty face fixed setwise by g^k contains a full <g^k>-orbit of one of
// its vertices, and every such orbit is itself a fixed face. So it suffices to
// test, for each k and vertex v, whether the orbit of v under g^k is a face.
// The reported witness is the first such orbit found for the smallest k, then
// the smallest vertex.
FreenessResult is_free(const LabeledJoinComplex& j, const CyclicAction& action);

}  // namespace ctv

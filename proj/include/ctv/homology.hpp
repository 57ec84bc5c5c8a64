#pragma once

// Reduced homology with F_p coefficients.
//
// Only homology is computed. Over a field the universal coefficient theorem
// gives dim H^k(X; F_p) = dim H_k(X; F_p), so every Betti number reported here
// is also the corresponding cohomology rank.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ctv/complex.hpp"
#include "ctv/constructions.hpp"

namespace ctv {

inline constexpr unsigned kMaxPrime = 97;

bool is_prime(unsigned p);

// Throws std::invalid_argument unless p is a prime <= kMaxPrime.
void require_supported_prime(unsigned p);

struct SparseMatrixFp {
  std::size_t rows = 0;
  std::size_t cols = 0;
  // columns[j]: (row, value) pairs sorted by row, values in [1, p).
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> columns;

  std::vector<std::vector<std::uint32_t>> to_dense() const;
};

// Augmented chain complex C_top -> ... -> C_0 -> C_{-1} = F_p.
struct ChainComplexFp {
  unsigned p = 2;
  std::vector<std::size_t> basis_sizes;     // basis_sizes[k + 1] = dim C_k, k >= -1
  std::vector<SparseMatrixFp> boundaries;   // boundaries[k] = ∂_k : C_k -> C_{k-1}, k >= 0

  int top_dim() const { return static_cast<int>(basis_sizes.size()) - 2; }
};

// Simplicial signs: the i-th vertex of a sorted face contributes (-1)^i.
ChainComplexFp chain_complex(const SimplicialComplex& complex, unsigned p);
ChainComplexFp chain_complex(const CellComplex& cells, unsigned p);

enum class RankMethod { automatic, dense, sparse };

// Dense row reduction through the runtime-selected SIMD row kernels when the
// matrix has fewer than 2000 columns and at most 2^23 entries; otherwise
// sparse column reduction.
std::size_t rank_mod_p(const SparseMatrixFp& m, unsigned p, RankMethod method = RankMethod::automatic);

struct BettiProfile {
  unsigned p = 2;
  std::vector<std::size_t> reduced;  // reduced[k + 1] = b̃_k, k >= -1

  // b̃_k; zero outside the stored range.
  std::size_t at(int k) const;
  // Σ_{k >= -1} (-1)^k b̃_k, the reduced Euler characteristic χ - 1.
  long long alternating_sum() const;
  friend bool operator==(const BettiProfile&, const BettiProfile&) = default;
};

BettiProfile betti(const ChainComplexFp& chains, RankMethod method = RankMethod::automatic);
BettiProfile betti(const SimplicialComplex& complex, unsigned p);
BettiProfile betti(const CellComplex& cells, unsigned p);

struct JoinFormulaReport {
  bool holds = false;
  BettiProfile base;                   // X
  std::vector<std::size_t> join_side;  // b̃ of X^{*r}, indexed like BettiProfile::reduced
  std::vector<std::size_t> tensor_side;
};

// Compares b̃_{i+r-1}(X^{*r}) with Σ_{j_1+...+j_r=i} Π b̃_{j_k}(X), both sides
// computed independently (the join by elimination on X^{*r}).
JoinFormulaReport check_join_formula(const SimplicialComplex& x, std::uint32_t r, unsigned p);

// Largest c <= up_to with b̃_i = 0 for every i <= c; -2 when b̃_{-1} != 0.
int homological_connectivity(const BettiProfile& profile, int up_to);
int homological_connectivity(const SimplicialComplex& complex, unsigned p, int up_to);

}  // namespace ctv

#pragma once

// Exact feasibility for { x >= 0 : A x = b } by the phase-one simplex method
// with Bland's rule, over GMP rationals.

#include <vector>

#include "ctv/rational.hpp"

namespace ctv {

using RationalMatrix = std::vector<std::vector<Rational>>;

struct FeasibilityResult {
  bool feasible = false;
  // A basic feasible solution, when feasible. It is the vertex reached from the
  // all-artificial starting basis under Bland's rule (smallest-index entering
  // column, ratio ties broken by the smallest basic index), so it depends only
  // on (A, b).
  std::vector<Rational> x;
  // When infeasible: y with yᵀA <= 0 componentwise and yᵀb > 0 (Farkas).
  std::vector<Rational> farkas;
};

FeasibilityResult solve_feasibility(const RationalMatrix& a, const std::vector<Rational>& b);

// Independent check of an infeasibility certificate.
bool verify_farkas(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& y);

}  // namespace ctv

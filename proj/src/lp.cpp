#include "ctv/lp.hpp"

#include <stdexcept>

namespace ctv {

FeasibilityResult solve_feasibility(const RationalMatrix& a, const std::vector<Rational>& b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw std::invalid_argument("feasibility: row count mismatch");
  const std::size_t n = m == 0 ? 0 : a[0].size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("feasibility: ragged matrix");

  // Tableau columns: x_0..x_{n-1}, artificials a_0..a_{m-1}, rhs.
  const std::size_t width = n + m + 1;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width));
  std::vector<int> row_sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    row_sign[i] = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = row_sign[i] * a[i][j];
    t[i][n + i] = 1;
    t[i][n + m] = row_sign[i] * b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Reduced costs of min Σ artificials; last entry is minus the objective value.
  std::vector<Rational> cost(width);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[j] -= t[i][j];
    cost[n + m] -= t[i][n + m];
  }

  Rational ratio, best;
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;

    std::size_t leave = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      ratio = t[i][n + m] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase one is bounded below by zero, so some row always qualifies.
    if (leave == m) throw std::logic_error("feasibility: unbounded phase one");

    const Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  FeasibilityResult out;
  out.feasible = cost[n + m] == 0;
  if (out.feasible) {
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] < n) out.x[basis[i]] = t[i][n + m];
  } else {
    // Artificial reduced cost is 1 - y_i for the sign-adjusted rows.
    out.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.farkas[i] = row_sign[i] * (1 - cost[n + i]);
  }
  return out;
}

bool verify_farkas(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& y) {
  if (y.size() != a.size() || b.size() != a.size()) return false;
  const std::size_t n = a.empty() ? 0 : a[0].size();
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += y[i] * a[i][j];
    if (s > 0) return false;
  }
  Rational yb = 0;
  for (std::size_t i = 0; i < b.size(); ++i) yb += y[i] * b[i];
  return yb > 0;
}

}  // namespace ctv

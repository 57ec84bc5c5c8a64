#include "ctv/homology.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "ctv/kernels.hpp"

namespace ctv {

namespace {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat: a^(p-2).
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t signed_mod(int s, unsigned p) {
  int v = s % static_cast<int>(p);
  return static_cast<std::uint32_t>(v < 0 ? v + static_cast<int>(p) : v);
}

struct FaceHash {
  std::size_t operator()(const Face& f) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (VertexId v : f) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

std::size_t dense_rank(const SparseMatrixFp& m, unsigned p) {
  const auto& k = kernels::select(p);
  const std::size_t width = m.cols;
  std::vector<std::uint32_t> data(m.rows * width, 0);
  for (std::size_t j = 0; j < m.cols; ++j)
    for (auto [r, v] : m.columns[j]) data[r * width + j] = v;
  auto row = [&](std::size_t r, std::size_t from) {
    return std::span<std::uint32_t>(data.data() + r * width + from, width - from);
  };

  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows && data[pivot * width + c] == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != rank) std::swap_ranges(row(pivot, c).begin(), row(pivot, c).end(), row(rank, c).begin());
    k.scale(row(rank, c), inverse_mod(data[rank * width + c], p), p);
    for (std::size_t r = rank + 1; r < m.rows; ++r) {
      std::uint32_t v = data[r * width + c];
      if (v != 0) k.axpy(row(r, c), row(rank, c), p - v, p);
    }
    ++rank;
  }
  return rank;
}

// Column reduction keyed on the largest row index ("low"), as in persistence
// algorithms. Each stored pivot column is normalized to low coefficient 1.
std::size_t sparse_rank(const SparseMatrixFp& m, unsigned p) {
  using Column = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  std::unordered_map<std::uint32_t, Column> pivot_of;
  Column scratch;
  for (const auto& original : m.columns) {
    Column col = original;
    while (!col.empty()) {
      auto it = pivot_of.find(col.back().first);
      if (it == pivot_of.end()) break;
      const Column& piv = it->second;
      const std::uint64_t factor = p - col.back().second;  // piv.back().second == 1
      scratch.clear();
      std::size_t a = 0, b = 0;
      while (a < col.size() || b < piv.size()) {
        if (b == piv.size() || (a < col.size() && col[a].first < piv[b].first)) {
          scratch.push_back(col[a++]);
        } else if (a == col.size() || piv[b].first < col[a].first) {
          scratch.push_back({piv[b].first, static_cast<std::uint32_t>(factor * piv[b].second % p)});
          ++b;
        } else {
          auto v = static_cast<std::uint32_t>((col[a].second + factor * piv[b].second) % p);
          if (v != 0) scratch.push_back({col[a].first, v});
          ++a;
          ++b;
        }
      }
      col.swap(scratch);
    }
    if (col.empty()) continue;
    const std::uint64_t inv = inverse_mod(col.back().second, p);
    for (auto& e : col) e.second = static_cast<std::uint32_t>(e.second * inv % p);
    pivot_of.emplace(col.back().first, std::move(col));
  }
  return pivot_of.size();
}

}  // namespace

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void require_supported_prime(unsigned p) {
  if (!is_prime(p) || p > kMaxPrime)
    throw std::invalid_argument("coefficient modulus must be a prime <= " + std::to_string(kMaxPrime) +
                                ", got " + std::to_string(p));
}

std::vector<std::vector<std::uint32_t>> SparseMatrixFp::to_dense() const {
  std::vector<std::vector<std::uint32_t>> d(rows, std::vector<std::uint32_t>(cols, 0));
  for (std::size_t j = 0; j < cols; ++j)
    for (auto [r, v] : columns[j]) d[r][j] = v;
  return d;
}

ChainComplexFp chain_complex(const SimplicialComplex& complex, unsigned p) {
  require_supported_prime(p);
  ChainComplexFp out;
  out.p = p;
  out.basis_sizes.push_back(1);
  for (int k = 0; k <= complex.dim(); ++k) out.basis_sizes.push_back(complex.faces(k).size());

  for (int k = 0; k <= complex.dim(); ++k) {
    const auto& faces = complex.faces(k);
    const auto& lower = complex.faces(k - 1);
    std::unordered_map<Face, std::uint32_t, FaceHash> index;
    index.reserve(lower.size());
    for (std::uint32_t i = 0; i < lower.size(); ++i) index.emplace(lower[i], i);

    SparseMatrixFp m;
    m.rows = lower.size();
    m.cols = faces.size();
    m.columns.resize(faces.size());
    Face sub;
    for (std::size_t j = 0; j < faces.size(); ++j) {
      const Face& f = faces[j];
      auto& col = m.columns[j];
      for (std::size_t i = 0; i < f.size(); ++i) {
        sub.assign(f.begin(), f.end());
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
        col.push_back({index.at(sub), signed_mod(i % 2 == 0 ? 1 : -1, p)});
      }
      std::sort(col.begin(), col.end());
    }
    out.boundaries.push_back(std::move(m));
  }
  return out;
}

ChainComplexFp chain_complex(const CellComplex& cells, unsigned p) {
  require_supported_prime(p);
  ChainComplexFp out;
  out.p = p;
  out.basis_sizes.push_back(1);
  for (const auto& c : cells.cells_by_dim) out.basis_sizes.push_back(c.size());

  for (int k = 0; k <= cells.dim(); ++k) {
    SparseMatrixFp m;
    m.cols = cells.cells_by_dim[k].size();
    m.columns.resize(m.cols);
    if (k == 0) {
      m.rows = 1;
      for (auto& col : m.columns) col.push_back({0, 1});
    } else {
      m.rows = cells.cells_by_dim[k - 1].size();
      std::vector<std::map<std::uint32_t, int>> acc(m.cols);
      for (const auto& e : cells.boundary[k]) acc[e.from][e.to] += e.sign;
      for (std::size_t j = 0; j < m.cols; ++j)
        for (auto [row, s] : acc[j])
          if (auto v = signed_mod(s, p); v != 0) m.columns[j].push_back({row, v});
    }
    out.boundaries.push_back(std::move(m));
  }
  return out;
}

std::size_t rank_mod_p(const SparseMatrixFp& m, unsigned p, RankMethod method) {
  if (m.rows == 0 || m.cols == 0) return 0;
  if (method == RankMethod::automatic)
    method = (m.cols < 2000 && m.rows * m.cols <= (std::size_t{1} << 23)) ? RankMethod::dense : RankMethod::sparse;
  return method == RankMethod::dense ? dense_rank(m, p) : sparse_rank(m, p);
}

std::size_t BettiProfile::at(int k) const {
  if (k < -1 || static_cast<std::size_t>(k + 1) >= reduced.size()) return 0;
  return reduced[static_cast<std::size_t>(k + 1)];
}

long long BettiProfile::alternating_sum() const {
  long long s = 0;
  for (std::size_t i = 0; i < reduced.size(); ++i)
    s += (i % 2 == 0 ? -1 : 1) * static_cast<long long>(reduced[i]);
  return s;
}

BettiProfile betti(const ChainComplexFp& chains, RankMethod method) {
  // rank_of[k + 1] = rank ∂_k, with ∂_{-1} = 0 and ∂_{top+1} = 0.
  std::vector<std::size_t> rank_of(chains.basis_sizes.size() + 1, 0);
  for (std::size_t k = 0; k < chains.boundaries.size(); ++k)
    rank_of[k + 1] = rank_mod_p(chains.boundaries[k], chains.p, method);

  BettiProfile out;
  out.p = chains.p;
  for (std::size_t i = 0; i < chains.basis_sizes.size(); ++i)
    out.reduced.push_back(chains.basis_sizes[i] - rank_of[i] - rank_of[i + 1]);
  return out;
}

BettiProfile betti(const SimplicialComplex& complex, unsigned p) { return betti(chain_complex(complex, p)); }
BettiProfile betti(const CellComplex& cells, unsigned p) { return betti(chain_complex(cells, p)); }

JoinFormulaReport check_join_formula(const SimplicialComplex& x, std::uint32_t r, unsigned p) {
  JoinFormulaReport rep;
  rep.base = betti(x, p);
  rep.join_side = betti(join_power(x, r).complex, p).reduced;

  // With P(t) = Σ_j b̃_j t^(j+1), the coefficient of t^m in P^r is the tensor
  // side in degree m - 1, which sits at index m of a reduced profile.
  std::vector<std::size_t> poly{1};
  for (std::uint32_t i = 0; i < r; ++i) {
    std::vector<std::size_t> next(poly.size() + rep.base.reduced.size() - 1, 0);
    for (std::size_t a = 0; a < poly.size(); ++a)
      for (std::size_t b = 0; b < rep.base.reduced.size(); ++b) next[a + b] += poly[a] * rep.base.reduced[b];
    poly = std::move(next);
  }
  rep.tensor_side = std::move(poly);

  auto trim = [](std::vector<std::size_t> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
  };
  rep.holds = trim(rep.join_side) == trim(rep.tensor_side);
  return rep;
}

int homological_connectivity(const BettiProfile& profile, int up_to) {
  int c = -2;
  for (int k = -1; k <= up_to; ++k) {
    if (profile.at(k) != 0) break;
    c = k;
  }
  return c;
}

int homological_connectivity(const SimplicialComplex& complex, unsigned p, int up_to) {
  return homological_connectivity(betti(complex, p), up_to);
}

}  // namespace ctv

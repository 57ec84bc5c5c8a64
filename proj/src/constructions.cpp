#include "ctv/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace ctv {

namespace {

std::uint64_t to_mask(const Face& f) {
  std::uint64_t m = 0;
  for (VertexId v : f) m |= std::uint64_t{1} << v;
  return m;
}

Face from_mask(std::uint64_t m) {
  Face f;
  while (m) {
    f.push_back(static_cast<VertexId>(__builtin_ctzll(m)));
    m &= m - 1;
  }
  return f;
}

// Every face of X (including the empty face) as a bitmask, in dimension then
// lexicographic order.
std::vector<std::uint64_t> all_face_masks(const SimplicialComplex& x) {
  if (x.n_vertices() > 64) throw std::invalid_argument("deleted constructions need at most 64 vertices");
  std::vector<std::uint64_t> out;
  for (int d = -1; d <= x.dim(); ++d)
    for (const auto& f : x.faces(d)) out.push_back(to_mask(f));
  return out;
}

// Tracks per-vertex multiplicities across the chosen faces: layer[t] holds
// the vertices used by at least t faces.
struct Multiplicity {
  std::vector<std::uint64_t> layer;

  explicit Multiplicity(std::uint32_t l) : layer(l, 0) { layer[0] = ~std::uint64_t{0}; }

  // Whether adding `f` keeps every vertex below multiplicity `layer.size()`.
  bool admits(std::uint64_t f) const { return (f & layer.back()) == 0; }

  void add(std::uint64_t f) {
    for (std::size_t t = layer.size() - 1; t >= 1; --t) layer[t] |= layer[t - 1] & f;
  }
};

// Face membership for subsets of X's vertices, dense when 2^n is small.
class FaceTable {
 public:
  explicit FaceTable(const SimplicialComplex& x) : n_(x.n_vertices()) {
    const auto masks = all_face_masks(x);
    if (n_ <= kDenseBits) {
      dense_.assign(std::size_t{1} << n_, false);
      for (auto m : masks) dense_[m] = true;
      ext_.assign(std::size_t{1} << n_, 0);
      for (auto m : masks) ext_[m] = compute_ext(m);
    } else {
      sparse_.insert(masks.begin(), masks.end());
    }
  }

  bool contains(std::uint64_t m) const { return n_ <= kDenseBits ? bool(dense_[m]) : sparse_.count(m) != 0; }

  // Vertices v outside face m with m + v still a face.
  std::uint64_t ext(std::uint64_t m) const { return n_ <= kDenseBits ? ext_[m] : compute_ext(m); }

 private:
  static constexpr std::size_t kDenseBits = 16;

  std::uint64_t compute_ext(std::uint64_t m) const {
    std::uint64_t e = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      std::uint64_t bit = std::uint64_t{1} << v;
      if (!(m & bit) && contains(m | bit)) e |= bit;
    }
    return e;
  }

  std::size_t n_;
  std::vector<bool> dense_;
  std::vector<std::uint64_t> ext_;
  std::unordered_set<std::uint64_t> sparse_;
};

// Shared enumeration behind deleted_join and join_power: faces F_1 * ... * F_r
// with no vertex of X in l or more of the F_i (l = r + 1 means unrestricted).
// Walks vertices of X in order, choosing the set of copies each one joins, and
// keeps the maximal tuples.
LabeledJoinComplex constrained_join(const SimplicialComplex& x, std::uint32_t r, std::uint32_t l) {
  if (r > 16) throw std::invalid_argument("at most 16 join copies supported");
  const FaceTable table(x);
  const std::size_t n = x.n_vertices();

  // Copy subsets a single vertex may join, smallest first.
  std::vector<std::uint32_t> options;
  for (std::uint32_t s = 0; s < (1u << r); ++s)
    if (static_cast<std::uint32_t>(__builtin_popcount(s)) <= l - 1) options.push_back(s);
  std::stable_sort(options.begin(), options.end(),
                   [](std::uint32_t a, std::uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });

  std::vector<std::uint64_t> parts(r, 0);
  std::uint64_t saturated = 0;  // vertices already in l - 1 copies
  std::vector<Face> facets;
  std::size_t visited = 0;

  auto recurse = [&](auto&& self, std::size_t v) -> void {
    if (v == n) {
      check_guard(++visited, "deleted join");
      for (std::uint32_t j = 0; j < r; ++j)
        if (table.ext(parts[j]) & ~saturated) return;
      Face f;
      for (std::uint32_t j = 0; j < r; ++j)
        for (VertexId u : from_mask(parts[j])) f.push_back(static_cast<VertexId>(j * n + u));
      facets.push_back(std::move(f));
      return;
    }
    const std::uint64_t bit = std::uint64_t{1} << v;
    for (std::uint32_t s : options) {
      bool ok = true;
      for (std::uint32_t j = 0; ok && j < r; ++j)
        if ((s >> j) & 1u) ok = table.contains(parts[j] | bit);
      if (!ok) continue;
      for (std::uint32_t j = 0; j < r; ++j)
        if ((s >> j) & 1u) parts[j] |= bit;
      const bool sat = static_cast<std::uint32_t>(__builtin_popcount(s)) == l - 1;
      if (sat) saturated |= bit;
      self(self, v + 1);
      if (sat) saturated &= ~bit;
      for (std::uint32_t j = 0; j < r; ++j)
        if ((s >> j) & 1u) parts[j] &= ~bit;
    }
  };
  recurse(recurse, 0);

  std::sort(facets.begin(), facets.end());
  LabeledJoinComplex out{SimplicialComplex(SimplicialComplex::trusted, r * n, std::move(facets)), {}, r};
  out.factor_of.reserve(r * n);
  for (std::uint32_t j = 0; j < r; ++j)
    for (VertexId v = 0; v < n; ++v) out.factor_of.push_back({j, v});
  return out;
}

}  // namespace

std::optional<VertexId> LabeledJoinComplex::find(std::uint32_t copy, VertexId vertex) const {
  for (VertexId id = 0; id < factor_of.size(); ++id)
    if (factor_of[id].copy == copy && factor_of[id].vertex == vertex) return id;
  return std::nullopt;
}

SimplicialComplex chessboard(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("chessboard needs rows, cols >= 1");
  if (rows * cols > 64) throw std::invalid_argument("chessboard limited to 64 cells");
  const bool by_rows = rows <= cols;
  const std::size_t small = by_rows ? rows : cols;
  const std::size_t large = by_rows ? cols : rows;

  std::vector<Face> facets;
  std::vector<std::size_t> pick(small);
  std::vector<bool> used(large, false);
  auto id = [&](std::size_t s, std::size_t l) -> VertexId {
    std::size_t row = by_rows ? s : l;
    std::size_t col = by_rows ? l : s;
    return static_cast<VertexId>(col * rows + row);
  };
  auto recurse = [&](auto&& self, std::size_t s) -> void {
    if (s == small) {
      Face f;
      for (std::size_t i = 0; i < small; ++i) f.push_back(id(i, pick[i]));
      std::sort(f.begin(), f.end());
      facets.push_back(std::move(f));
      check_guard(facets.size(), "chessboard");
      return;
    }
    for (std::size_t l = 0; l < large; ++l) {
      if (used[l]) continue;
      used[l] = true;
      pick[s] = l;
      self(self, s + 1);
      used[l] = false;
    }
  };
  recurse(recurse, 0);
  std::sort(facets.begin(), facets.end());
  return SimplicialComplex(SimplicialComplex::trusted, rows * cols, std::move(facets));
}

LabeledJoinComplex join_all(const std::vector<SimplicialComplex>& factors) {
  LabeledJoinComplex out;
  out.copies = static_cast<std::uint32_t>(factors.size());
  std::vector<Face> facets{Face{}};
  std::size_t offset = 0;
  for (std::uint32_t c = 0; c < factors.size(); ++c) {
    const auto& x = factors[c];
    check_guard(facets.size() * x.facets().size(), "join");
    std::vector<Face> next;
    next.reserve(facets.size() * x.facets().size());
    for (const auto& f : facets)
      for (const auto& g : x.facets()) {
        Face h = f;
        for (VertexId v : g) h.push_back(static_cast<VertexId>(v + offset));
        next.push_back(std::move(h));
      }
    facets = std::move(next);
    for (VertexId v = 0; v < x.n_vertices(); ++v) out.factor_of.push_back({c, v});
    offset += x.n_vertices();
  }
  std::sort(facets.begin(), facets.end());
  out.complex = SimplicialComplex(SimplicialComplex::trusted, offset, std::move(facets));
  return out;
}

LabeledJoinComplex join(const SimplicialComplex& x, const SimplicialComplex& y) {
  if (x.n_vertices() == 0 || y.n_vertices() == 0)
    throw std::invalid_argument("join needs nonempty vertex sets");
  return join_all({x, y});
}

LabeledJoinComplex join_power(const SimplicialComplex& x, std::uint32_t r) {
  if (r == 0) throw std::invalid_argument("join power needs r >= 1");
  return join_all(std::vector<SimplicialComplex>(r, x));
}

LabeledJoinComplex deleted_join(const SimplicialComplex& x, std::uint32_t r, std::uint32_t l) {
  if (r < 2 || l < 2 || l > r) throw std::invalid_argument("deleted join needs r >= 2 and 2 <= l <= r");
  return constrained_join(x, r, l);
}

int cell_dim(const Cell& cell) {
  int d = 0;
  for (const auto& f : cell) d += face_dim(f);
  return d;
}

std::vector<std::size_t> CellComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& c : cells_by_dim) f.push_back(c.size());
  return f;
}

long long CellComplex::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t i = 0; i < cells_by_dim.size(); ++i)
    chi += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(cells_by_dim[i].size());
  return chi;
}

CellComplex deleted_product(const SimplicialComplex& x, std::uint32_t r, std::uint32_t l) {
  if (r < 2 || l < 2 || l > r) throw std::invalid_argument("deleted product needs r >= 2 and 2 <= l <= r");
  std::vector<std::uint64_t> masks;
  for (auto m : all_face_masks(x))
    if (m != 0) masks.push_back(m);

  std::map<int, std::vector<Cell>> by_dim;
  std::vector<std::uint64_t> chosen(r);
  std::size_t count = 0;
  auto recurse = [&](auto&& self, std::uint32_t copy, const Multiplicity& mult) -> void {
    if (copy == r) {
      check_guard(++count, "deleted product");
      Cell cell;
      for (auto m : chosen) cell.push_back(from_mask(m));
      by_dim[cell_dim(cell)].push_back(std::move(cell));
      return;
    }
    for (auto m : masks) {
      if (!mult.admits(m)) continue;
      Multiplicity next = mult;
      next.add(m);
      chosen[copy] = m;
      self(self, copy + 1, next);
    }
  };
  recurse(recurse, 0, Multiplicity(l));

  CellComplex out;
  out.factors = r;
  if (by_dim.empty()) return out;
  const int top = by_dim.rbegin()->first;
  out.cells_by_dim.resize(top + 1);
  for (auto& [d, cells] : by_dim) {
    std::sort(cells.begin(), cells.end());
    out.cells_by_dim[d] = std::move(cells);
  }

  out.boundary.resize(top + 1);
  for (int d = 1; d <= top; ++d) {
    std::map<Cell, std::uint32_t> index;
    for (std::uint32_t i = 0; i < out.cells_by_dim[d - 1].size(); ++i) index.emplace(out.cells_by_dim[d - 1][i], i);
    auto& entries = out.boundary[d];
    for (std::uint32_t from = 0; from < out.cells_by_dim[d].size(); ++from) {
      const Cell& cell = out.cells_by_dim[d][from];
      int prefix = 0;
      for (std::size_t i = 0; i < cell.size(); ++i) {
        const Face& f = cell[i];
        if (f.size() >= 2) {
          for (std::size_t k = 0; k < f.size(); ++k) {
            Cell target = cell;
            target[i].erase(target[i].begin() + static_cast<std::ptrdiff_t>(k));
            int sign = ((prefix + static_cast<int>(k)) % 2 == 0) ? 1 : -1;
            entries.push_back({from, index.at(target), sign});
          }
        }
        prefix += face_dim(f);
      }
    }
  }
  return out;
}

bool boundary_squares_to_zero(const CellComplex& cells, unsigned p) {
  for (int d = 2; d <= cells.dim(); ++d) {
    // Column-by-column composite: for each d-cell, accumulate its image in dim d-2.
    std::vector<std::vector<std::pair<std::uint32_t, int>>> down(cells.cells_by_dim[d - 1].size());
    for (const auto& e : cells.boundary[d - 1]) down[e.from].push_back({e.to, e.sign});
    std::map<std::uint32_t, std::map<std::uint32_t, long long>> composite;
    for (const auto& e : cells.boundary[d])
      for (auto [to, s] : down[e.to]) composite[e.from][to] += static_cast<long long>(e.sign) * s;
    for (const auto& [from, row] : composite)
      for (const auto& [to, v] : row)
        if (((v % static_cast<long long>(p)) + p) % p != 0) return false;
  }
  return true;
}

LabeledJoinComplex test_space_K(const Coloring& coloring, std::uint32_t r) {
  if (r < 2) throw std::invalid_argument("test space needs r >= 2");
  std::vector<SimplicialComplex> boards;
  for (const auto& cls : coloring.classes()) boards.push_back(chessboard(r, cls.size()));
  auto joined = join_all(boards);
  LabeledJoinComplex out{std::move(joined.complex), {}, r};
  for (const auto& cls : coloring.classes())
    for (std::size_t c = 0; c < cls.size(); ++c)
      for (std::uint32_t row = 0; row < r; ++row) out.factor_of.push_back({row, cls[c]});
  return out;
}

std::vector<VertexId> rainbow_to_test_space(const Coloring& coloring, std::uint32_t r) {
  const std::size_t n = coloring.size();
  std::vector<VertexId> map(r * n);
  std::size_t offset = 0;
  for (const auto& cls : coloring.classes()) {
    for (std::size_t c = 0; c < cls.size(); ++c)
      for (std::uint32_t row = 0; row < r; ++row)
        map[row * n + cls[c]] = static_cast<VertexId>(offset + c * r + row);
    offset += r * cls.size();
  }
  return map;
}

bool is_isomorphism(const SimplicialComplex& a, const SimplicialComplex& b,
                    const std::vector<VertexId>& map) {
  if (a.n_vertices() != b.n_vertices() || map.size() != a.n_vertices()) return false;
  std::vector<bool> hit(b.n_vertices(), false);
  for (VertexId v : map) {
    if (v >= b.n_vertices() || hit[v]) return false;
    hit[v] = true;
  }
  if (a.facets().size() != b.facets().size()) return false;
  std::vector<Face> image;
  image.reserve(a.facets().size());
  for (const auto& f : a.facets()) {
    Face g;
    for (VertexId v : f) g.push_back(map[v]);
    std::sort(g.begin(), g.end());
    image.push_back(std::move(g));
  }
  std::sort(image.begin(), image.end());
  return image == b.facets();
}

std::vector<VertexId> CyclicAction::power(std::uint32_t k) const {
  std::vector<VertexId> p(generator.size());
  std::iota(p.begin(), p.end(), VertexId{0});
  for (std::uint32_t s = 0; s < k; ++s)
    for (auto& v : p) v = generator[v];
  return p;
}

Face CyclicAction::apply(const Face& f, std::uint32_t k) const {
  Face g = f;
  for (std::uint32_t s = 0; s < k; ++s)
    for (auto& v : g) v = generator[v];
  std::sort(g.begin(), g.end());
  return g;
}

CyclicAction cyclic_action(const LabeledJoinComplex& j) {
  if (j.copies < 2) throw ConstructionError("cyclic action needs at least two join copies");
  std::map<std::pair<std::uint32_t, VertexId>, VertexId> lookup;
  for (VertexId id = 0; id < j.factor_of.size(); ++id)
    lookup[{j.factor_of[id].copy, j.factor_of[id].vertex}] = id;

  CyclicAction action{j.copies, std::vector<VertexId>(j.factor_of.size())};
  for (VertexId id = 0; id < j.factor_of.size(); ++id) {
    auto [copy, v] = j.factor_of[id];
    auto it = lookup.find({(copy + 1) % j.copies, v});
    if (it == lookup.end())
      throw ConstructionError("shifted label (" + std::to_string((copy + 1) % j.copies) + ", " +
                              std::to_string(v) + ") missing");
    action.generator[id] = it->second;
  }

  std::set<Face> facets(j.complex.facets().begin(), j.complex.facets().end());
  for (const auto& f : j.complex.facets())
    if (!facets.count(action.apply(f))) throw ConstructionError("complex not closed under the copy shift");
  return action;
}

FreenessResult is_free(const LabeledJoinComplex& j, const CyclicAction& action) {
  const std::size_t n = action.generator.size();
  for (std::uint32_t k = 1; k < action.order; ++k) {
    auto g = action.power(k);
    for (VertexId v = 0; v < n; ++v) {
      Face orbit{v};
      for (VertexId w = g[v]; w != v; w = g[w]) orbit.push_back(w);
      std::sort(orbit.begin(), orbit.end());
      if (j.complex.contains_face(orbit)) return {false, orbit, k};
    }
  }
  return {};
}

}  // namespace ctv

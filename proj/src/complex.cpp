#include "ctv/complex.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <unordered_set>

namespace ctv {

namespace {

std::atomic<std::size_t>& guard_storage() {
  static std::atomic<std::size_t> limit = [] {
    std::size_t v = 5'000'000;
    if (const char* env = std::getenv("CTV_FACE_GUARD")) {
      char* end = nullptr;
      unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && parsed > 0) v = static_cast<std::size_t>(parsed);
    }
    return v;
  }();
  return limit;
}

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

// Calls fn(subset) for every size-k subset of `facet`, in lexicographic order.
template <class Fn>
void for_each_subset(const Face& facet, std::size_t k, Fn&& fn) {
  const std::size_t n = facet.size();
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  Face sub(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) sub[i] = facet[idx[i]];
    fn(sub);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct FaceHash {
  std::size_t operator()(const Face& f) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (VertexId v : f) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

}  // namespace

std::size_t face_guard() { return guard_storage().load(); }
void set_face_guard(std::size_t limit) { guard_storage().store(limit); }

void check_guard(std::size_t count, const char* where) {
  if (count > face_guard()) throw GuardExceeded(face_guard(), where);
}

struct SimplicialComplex::Cache {
  std::mutex mu;
  std::map<int, std::vector<Face>> by_dim;
  std::once_flag masks_once;
  std::vector<std::uint64_t> facet_masks;
};

SimplicialComplex::SimplicialComplex()
    : n_vertices_(0), dim_(-1), facets_{Face{}}, cache_(std::make_unique<Cache>()) {}

SimplicialComplex::SimplicialComplex(std::size_t n_vertices, std::vector<Face> faces)
    : n_vertices_(n_vertices), cache_(std::make_unique<Cache>()) {
  for (auto& f : faces) {
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      throw std::invalid_argument("face has a repeated vertex");
    if (!f.empty() && f.back() >= n_vertices)
      throw std::invalid_argument("face vertex " + std::to_string(f.back()) + " out of range");
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  std::stable_sort(faces.begin(), faces.end(),
                   [](const Face& a, const Face& b) { return a.size() > b.size(); });

  std::vector<Face> kept;
  std::vector<bool> covered(n_vertices, false);
  for (auto& f : faces) {
    if (f.empty()) continue;
    bool contained = false;
    for (const auto& g : kept) {
      if (g.size() <= f.size()) break;
      if (std::includes(g.begin(), g.end(), f.begin(), f.end())) {
        contained = true;
        break;
      }
    }
    if (contained) continue;
    for (VertexId v : f) covered[v] = true;
    kept.push_back(std::move(f));
  }
  for (VertexId v = 0; v < n_vertices; ++v)
    if (!covered[v]) kept.push_back(Face{v});
  if (kept.empty()) kept.push_back(Face{});
  std::sort(kept.begin(), kept.end());
  facets_ = std::move(kept);
  dim_ = -1;
  for (const auto& f : facets_) dim_ = std::max(dim_, face_dim(f));
}

SimplicialComplex::SimplicialComplex(trusted_t, std::size_t n_vertices, std::vector<Face> facets)
    : n_vertices_(n_vertices), facets_(std::move(facets)), cache_(std::make_unique<Cache>()) {
  if (facets_.empty()) facets_.push_back(Face{});
  dim_ = -1;
  for (const auto& f : facets_) dim_ = std::max(dim_, face_dim(f));
}

SimplicialComplex::SimplicialComplex(const SimplicialComplex& other)
    : n_vertices_(other.n_vertices_),
      dim_(other.dim_),
      facets_(other.facets_),
      cache_(std::make_unique<Cache>()) {}

SimplicialComplex& SimplicialComplex::operator=(const SimplicialComplex& other) {
  if (this != &other) {
    n_vertices_ = other.n_vertices_;
    dim_ = other.dim_;
    facets_ = other.facets_;
    cache_ = std::make_unique<Cache>();
  }
  return *this;
}

SimplicialComplex::SimplicialComplex(SimplicialComplex&&) noexcept = default;
SimplicialComplex& SimplicialComplex::operator=(SimplicialComplex&&) noexcept = default;
SimplicialComplex::~SimplicialComplex() = default;

const std::vector<Face>& SimplicialComplex::faces(int dim) const {
  static const std::vector<Face> empty_list;
  static const std::vector<Face> empty_face{Face{}};
  if (dim < -1 || dim > dim_) return empty_list;
  if (dim == -1) return empty_face;

  std::lock_guard lock(cache_->mu);
  auto it = cache_->by_dim.find(dim);
  if (it != cache_->by_dim.end()) return it->second;

  const std::size_t k = static_cast<std::size_t>(dim) + 1;
  std::vector<Face> out;
  if (n_vertices_ <= 64) {
    std::unordered_set<std::uint64_t> seen;
    for (const auto& facet : facets_) {
      for_each_subset(facet, k, [&](const Face& s) { seen.insert(to_mask(s)); });
      check_guard(seen.size(), "face closure");
    }
    out.reserve(seen.size());
    for (auto m : seen) out.push_back(from_mask(m));
  } else {
    std::unordered_set<Face, FaceHash> seen;
    for (const auto& facet : facets_) {
      for_each_subset(facet, k, [&](const Face& s) { seen.insert(s); });
      check_guard(seen.size(), "face closure");
    }
    out.assign(seen.begin(), seen.end());
  }
  std::sort(out.begin(), out.end());
  return cache_->by_dim.emplace(dim, std::move(out)).first->second;
}

bool SimplicialComplex::contains_face(const Face& face) const {
  if (!face.empty() && face.back() >= n_vertices_) return false;
  if (n_vertices_ <= 64) {
    std::call_once(cache_->masks_once, [this] {
      cache_->facet_masks.reserve(facets_.size());
      for (const auto& f : facets_) cache_->facet_masks.push_back(to_mask(f));
    });
    const std::uint64_t m = to_mask(face);
    for (auto fm : cache_->facet_masks)
      if ((m & ~fm) == 0) return true;
    return false;
  }
  for (const auto& f : facets_)
    if (f.size() >= face.size() && std::includes(f.begin(), f.end(), face.begin(), face.end()))
      return true;
  return false;
}

Coloring::Coloring(std::vector<int> color_of) : color_of_(std::move(color_of)) {
  std::map<int, std::vector<VertexId>> by_color;
  for (VertexId v = 0; v < color_of_.size(); ++v) {
    if (color_of_[v] < 0) throw std::invalid_argument("negative color index");
    by_color[color_of_[v]].push_back(v);
  }
  for (auto& [c, members] : by_color) {
    class_index_[c] = classes_.size();
    classes_.push_back(std::move(members));
  }
}

std::size_t Coloring::class_size(int color) const {
  auto it = class_index_.find(color);
  return it == class_index_.end() ? 0 : classes_[it->second].size();
}

std::size_t Coloring::max_class_size() const {
  std::size_t m = 0;
  for (const auto& c : classes_) m = std::max(m, c.size());
  return m;
}

std::vector<Face> faces_of(const SimplicialComplex& complex, int dim) { return complex.faces(dim); }

bool is_rainbow(const Face& face, const Coloring& coloring) {
  std::vector<int> seen;
  seen.reserve(face.size());
  for (VertexId v : face) {
    int c = coloring.color(v);
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) return false;
    seen.push_back(c);
  }
  return true;
}

SimplicialComplex rainbow_subcomplex(std::size_t n_vertices, const Coloring& coloring) {
  if (coloring.size() != n_vertices)
    throw std::invalid_argument("coloring size does not match vertex count");
  const auto& classes = coloring.classes();
  std::size_t count = 1;
  for (const auto& c : classes) {
    count *= c.size();
    check_guard(count, "rainbow_subcomplex");
  }
  // Facets are the full transversals: one vertex from every class.
  std::vector<Face> facets;
  facets.reserve(count);
  std::vector<std::size_t> pick(classes.size(), 0);
  while (true) {
    Face f;
    for (std::size_t i = 0; i < classes.size(); ++i) f.push_back(classes[i][pick[i]]);
    std::sort(f.begin(), f.end());
    facets.push_back(std::move(f));
    std::size_t i = classes.size();
    while (i > 0 && ++pick[i - 1] == classes[i - 1].size()) pick[--i] = 0;
    if (i == 0) break;
  }
  std::sort(facets.begin(), facets.end());
  return SimplicialComplex(SimplicialComplex::trusted, n_vertices, std::move(facets));
}

std::vector<std::size_t> f_vector(const SimplicialComplex& complex) {
  std::vector<std::size_t> f;
  for (int d = 0; d <= complex.dim(); ++d) f.push_back(complex.faces(d).size());
  return f;
}

long long euler_characteristic(const SimplicialComplex& complex) {
  long long chi = 0;
  auto f = f_vector(complex);
  for (std::size_t i = 0; i < f.size(); ++i)
    chi += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(f[i]);
  return chi;
}

SimplicialComplex full_simplex(std::size_t n_vertices) {
  Face f(n_vertices);
  for (VertexId v = 0; v < n_vertices; ++v) f[v] = v;
  return SimplicialComplex(SimplicialComplex::trusted, n_vertices, {f});
}

SimplicialComplex simplex_boundary(std::size_t n_vertices) {
  if (n_vertices < 2) throw std::invalid_argument("boundary needs at least 2 vertices");
  std::vector<Face> facets;
  for (VertexId skip = n_vertices; skip-- > 0;) {
    Face f;
    for (VertexId v = 0; v < n_vertices; ++v)
      if (v != skip) f.push_back(v);
    facets.push_back(std::move(f));
  }
  return SimplicialComplex(SimplicialComplex::trusted, n_vertices, std::move(facets));
}

SimplicialComplex discrete_points(std::size_t n) {
  std::vector<Face> facets;
  for (VertexId v = 0; v < n; ++v) facets.push_back(Face{v});
  return SimplicialComplex(SimplicialComplex::trusted, n, std::move(facets));
}

SimplicialComplex cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<Face> edges;
  for (VertexId v = 0; v < n; ++v) {
    VertexId w = static_cast<VertexId>((v + 1) % n);
    edges.push_back(v < w ? Face{v, w} : Face{w, v});
  }
  return SimplicialComplex(n, std::move(edges));
}

}  // namespace ctv

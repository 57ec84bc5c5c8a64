#pragma once

// Finite abstract simplicial complexes stored by their facets.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctv {

using VertexId = std::uint32_t;

// Strictly increasing vertex list. The empty list is the empty face.
using Face = std::vector<VertexId>;

inline int face_dim(const Face& f) { return static_cast<int>(f.size()) - 1; }

// Thrown when an operation would materialize more faces than the configured
// limit. Distinct from std::length_error so callers can map it to its own exit code.
class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(std::size_t limit, const std::string& where)
      : std::runtime_error("face guard exceeded (" + std::to_string(limit) + ") in " + where),
        limit_(limit) {}
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

// Global face-count guard. Default 5'000'000; CTV_FACE_GUARD overrides it at
// first use.
std::size_t face_guard();
void set_face_guard(std::size_t limit);

// Throws GuardExceeded when count > face_guard().
void check_guard(std::size_t count, const char* where);

class SimplicialComplex {
 public:
  // The complex {∅} on zero vertices.
  SimplicialComplex();

  // Normalizes: sorts each face, drops duplicates and non-maximal faces, and
  // adds a singleton facet for every vertex not covered by any face.
  SimplicialComplex(std::size_t n_vertices, std::vector<Face> faces);

  struct trusted_t {};
  static constexpr trusted_t trusted{};
  // Caller guarantees: every facet strictly increasing, facets pairwise
  // incomparable, lexicographically sorted, every vertex covered.
  SimplicialComplex(trusted_t, std::size_t n_vertices, std::vector<Face> facets);

  SimplicialComplex(const SimplicialComplex& other);
  SimplicialComplex& operator=(const SimplicialComplex& other);
  SimplicialComplex(SimplicialComplex&&) noexcept;
  SimplicialComplex& operator=(SimplicialComplex&&) noexcept;
  ~SimplicialComplex();

  std::size_t n_vertices() const { return n_vertices_; }
  const std::vector<Face>& facets() const { return facets_; }
  int dim() const { return dim_; }

  // All faces of exactly `dim`, lexicographically sorted. dim == -1 gives {∅};
  // out-of-range dims give an empty list. Memoized and thread-safe.
  const std::vector<Face>& faces(int dim) const;

  // True iff `face` (sorted) is contained in some facet.
  bool contains_face(const Face& face) const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.n_vertices_ == b.n_vertices_ && a.facets_ == b.facets_;
  }

 private:
  struct Cache;

  std::size_t n_vertices_ = 0;
  int dim_ = -1;
  std::vector<Face> facets_;
  std::unique_ptr<Cache> cache_;
};

// Color assignment of vertices 0..n-1. Color indices need not be contiguous.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::vector<int> color_of);

  std::size_t size() const { return color_of_.size(); }
  int color(VertexId v) const { return color_of_.at(v); }
  const std::vector<int>& colors() const { return color_of_; }

  // Nonempty classes in increasing color order, each sorted by vertex id.
  const std::vector<std::vector<VertexId>>& classes() const { return classes_; }
  std::size_t class_size(int color) const;
  std::size_t max_class_size() const;

 private:
  std::vector<int> color_of_;
  std::vector<std::vector<VertexId>> classes_;
  std::map<int, std::size_t> class_index_;
};

std::vector<Face> faces_of(const SimplicialComplex& complex, int dim);

bool is_rainbow(const Face& face, const Coloring& coloring);

// Complex of all rainbow subsets of 0..n_vertices-1: the join of the color
// classes viewed as discrete complexes.
SimplicialComplex rainbow_subcomplex(std::size_t n_vertices, const Coloring& coloring);

// f_i for i = 0..dim.
std::vector<std::size_t> f_vector(const SimplicialComplex& complex);
long long euler_characteristic(const SimplicialComplex& complex);

// Common small complexes.
SimplicialComplex full_simplex(std::size_t n_vertices);
SimplicialComplex simplex_boundary(std::size_t n_vertices);
SimplicialComplex discrete_points(std::size_t n);
SimplicialComplex cycle_graph(std::size_t n);

}  // namespace ctv

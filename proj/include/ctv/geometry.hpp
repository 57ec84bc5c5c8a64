#pragma once

// Exact verification of colored Tverberg partitions for affine maps to R^d and
// piecewise-linear maps to the flat torus T^d = R^d / Z^d.
//
// A configuration lists the images of the N+1 vertices of Δ_N. For the torus
// target the points are the chosen lifts in [0,1)^d of the vertex images and
// the map is the affine map through those lifts followed by the projection.
//
// Torus translates: part i's image is conv(lifts of part i) + Z^d. Fixing the
// translate of part 1 to zero, a common point x lies in conv(set_1) ⊂ [0,1]^d
// and in conv(set_i) + t_i ⊂ [0,1]^d + t_i, so every coordinate of t_i is in
// {-1, 0, 1}. Searching those 3^(d(r-1)) tuples is therefore complete.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ctv/complex.hpp"
#include "ctv/lp.hpp"
#include "ctv/rational.hpp"

namespace ctv {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HullIntersection {
  bool found = false;
  Point point;
  std::vector<std::vector<Rational>> weights;  // convex weights per set, when found
  std::vector<Rational> infeasibility_certificate;

  explicit operator bool() const { return found; }
};

// Common point of conv(S_1), ..., conv(S_r). The point is Σ_j λ_1j p_1j for the
// basic solution that the Bland-rule phase one reaches on
//   Σ_j λ_ij = 1 (each i),  Σ_j λ_1j p_1j - Σ_j λ_ij p_ij = 0 (i >= 2),  λ >= 0,
// with variables ordered set-major. Deterministic in the input.
HullIntersection intersect_hulls(const std::vector<std::vector<Point>>& point_sets);

using Translate = std::vector<long>;

struct TorusIntersection {
  bool found = false;
  Point point;
  std::vector<Translate> translates;  // translates[0] is zero
  std::vector<std::vector<Rational>> weights;

  explicit operator bool() const { return found; }
};

// First translate tuple, lexicographic over (t_2, ..., t_r) with -1 < 0 < 1,
// for which the translated hulls share a point. Lifts must lie in [0,1)^d.
TorusIntersection torus_intersect(const std::vector<std::vector<Point>>& point_sets);

enum class Target { euclidean, torus };

struct ColoredConfiguration {
  std::size_t d = 1;
  std::uint32_t r = 2;
  std::vector<Point> points;
  Coloring coloring;
  Target target = Target::euclidean;

  std::size_t n_points() const { return points.size(); }

  // Throws DimensionMismatch / std::invalid_argument on structural problems.
  void validate() const;

  // Departures from N = (d+1)(r-1) and |C_i| <= r-1. Not errors.
  std::vector<std::string> hypothesis_warnings() const;
};

struct TverbergPartition {
  std::vector<Face> parts;
  Point witness;
  std::vector<Translate> translates;  // torus only
  std::vector<std::vector<Rational>> weights;
};

enum class Outcome { found, none, budget_exhausted };

struct TverbergReport {
  Outcome outcome = Outcome::none;
  std::optional<TverbergPartition> partition;
  std::uint64_t partitions_examined = 0;
  bool exhaustive = false;
  std::vector<std::string> warnings;
};

struct SearchOptions {
  unsigned jobs = 1;
  std::uint64_t budget = 0;  // candidate partitions; 0 = unlimited
};

// Lexicographic search over assignments vertex -> {unused, part 1..r}. Parts
// are rainbow and nonempty, and part i's least vertex precedes part i+1's.
// Returns the lexicographically least valid partition; partitions_examined
// counts candidates up to and including it (all candidates for NONE). Both are
// independent of `jobs`.
TverbergReport find_partition(const ColoredConfiguration& config, const SearchOptions& options = {});

// Intersection test used by the search for a given candidate.
std::optional<TverbergPartition> test_parts(const ColoredConfiguration& config, const std::vector<Face>& parts);

// Calls fn on every canonical candidate in search order until fn returns false.
void for_each_candidate(const ColoredConfiguration& config,
                        const std::function<bool(const std::vector<Face>&)>& fn);

// Every valid partition, in search order.
std::vector<TverbergPartition> all_partitions(const ColoredConfiguration& config);

// Exact re-check by substitution: disjoint nonempty rainbow parts and
// witness = Σ w_j p_j + t_i with w >= 0, Σ w = 1 for every part.
bool verify_partition(const ColoredConfiguration& config, const TverbergPartition& partition);

// Unpruned cross-check: walks all (r+1)^n assignments. Ordered candidates are
// divided by r! so counts are comparable with partitions_examined.
struct NaiveCount {
  std::uint64_t candidates = 0;
  std::uint64_t valid = 0;
};
NaiveCount naive_enumeration(const ColoredConfiguration& config);

struct TightnessResult {
  std::optional<ColoredConfiguration> witness;
  TverbergReport report;  // certified NONE for the witness
  std::uint64_t configurations_tried = 0;
};

// One class of size r (color 0), all other vertices singletons, N+1 points with
// N = (d+1)(r-1). Tries the moment curve t -> (t, t^2, ..., t^d) at t = 0..N
// with every placement of the size-r class, then seeded random perturbations.
// An empty witness after `budget` configurations is inconclusive.
TightnessResult find_tightness_witness(std::size_t d, std::uint32_t r, std::uint64_t budget,
                                       std::uint64_t seed = 1, const SearchOptions& options = {});

// Number of applications of the reduction lift: 1 + floor(d / (r-1)).
std::size_t reduction_count(std::size_t d, std::uint32_t r);

// (r-1)(d_dim + g) > r * e.
bool check_reduction_inequality(std::size_t d_dim, std::size_t g, std::size_t e, std::uint32_t r);

// (d, r) -> (d+1, r): adds r-1 vertices of a fresh color. Old vertices map to
// (p_i, 0), the new ones to (p_N, 1).
ColoredConfiguration lift_configuration(const ColoredConfiguration& config);

struct RoundtripReport {
  bool ok = false;
  std::uint64_t lifted_partitions = 0;
  std::string failure;
};

// Every valid partition of the lifted configuration has its witness at height
// 0, and restricting its parts to the original vertices gives a valid
// partition of the original configuration containing the projected witness.
RoundtripReport verify_reduction_roundtrip(const ColoredConfiguration& config);

// Seeded generators. Colorings keep every class at size <= r-1.
Coloring random_coloring(std::size_t n, std::uint32_t r, std::mt19937_64& rng);
ColoredConfiguration random_configuration(std::size_t d, std::uint32_t r, Target target, std::mt19937_64& rng);

}  // namespace ctv

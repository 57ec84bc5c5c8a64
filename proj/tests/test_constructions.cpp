#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ctv/constructions.hpp"
#include "ctv/homology.hpp"
#include "ctv/verify_suite.hpp"
#include "util.hpp"

using namespace ctv;

namespace {

oracle::FaceSet brute(const SimplicialComplex& x) {
  auto s = oracle::closure(x.facets());
  return s;
}

bool same_up_to_iso(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.n_vertices() != b.n_vertices()) return false;
  return oracle::find_isomorphism(a.n_vertices(), face_set(a), face_set(b)).has_value();
}

std::size_t betti_at(const SimplicialComplex& x, int k, unsigned p = 2) { return betti(x, p).at(k); }

}  // namespace

TEST_CASE("join examples") {
  auto s0 = discrete_points(2);
  auto j = join(s0, s0);
  CHECK(same_up_to_iso(j.complex, cycle_graph(4)));
  CHECK(j.factor_of[2] == JoinLabel{1, 0});
  CHECK(j.find(1, 1) == VertexId{3});

  auto cone = join(cycle_graph(5), discrete_points(1));
  CHECK(euler_characteristic(cone.complex) == 1);

  auto k33 = join(discrete_points(3), discrete_points(3)).complex;
  CHECK(f_vector(k33) == std::vector<std::size_t>{6, 9});
  CHECK(k33.dim() == 1);
}

TEST_CASE("join matches the union-of-faces definition") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const std::size_t nx = 1 + t % 4, ny = 1 + (t / 4) % 4;
    SimplicialComplex x(nx, oracle::random_facets(nx, rng, 2)), y(ny, oracle::random_facets(ny, rng, 2));
    auto j = join(x, y).complex;
    CHECK(face_set(j) == oracle::join(face_set(x), nx, face_set(y)));
    CHECK(j.dim() == x.dim() + y.dim() + 1);
  }
}

TEST_CASE("chessboard examples") {
  auto c22 = chessboard(2, 2);
  CHECK(c22.n_vertices() == 4);
  CHECK(c22.facets() == std::vector<Face>{{0, 3}, {1, 2}});
  auto c23 = chessboard(2, 3);
  CHECK(same_up_to_iso(c23, cycle_graph(6)));
  CHECK(betti_at(c23, 1) == 1);
  CHECK(f_vector(chessboard(3, 4)) == std::vector<std::size_t>{12, 36, 24});
}

TEST_CASE("chessboard matches non-attacking rook enumeration") {
  for (std::size_t r = 1; r <= 4; ++r)
    for (std::size_t k = 1; k <= 4; ++k) {
      auto c = chessboard(r, k);
      CHECK(face_set(c) == oracle::chessboard(r, k));
      CHECK(c.dim() == static_cast<int>(std::min(r, k)) - 1);
      CHECK(c.n_vertices() == r * k);
    }
  // transposing the board gives an isomorphic complex
  CHECK(same_up_to_iso(chessboard(2, 4), chessboard(4, 2)));
  CHECK(same_up_to_iso(chessboard(3, 4), chessboard(4, 3)));
}

TEST_CASE("deleted join examples") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::uint32_t r : {2u, 3u}) {
      auto dj = deleted_join(full_simplex(n), r, 2);
      CHECK(dj.complex.n_vertices() == r * n);
      auto pw = join_power(discrete_points(r), static_cast<std::uint32_t>(n)).complex;
      CHECK(same_up_to_iso(dj.complex, pw));
    }
  auto pt = deleted_join(discrete_points(1), 2, 2).complex;
  CHECK(pt.facets() == std::vector<Face>{{0}, {1}});
  auto edge = deleted_join(full_simplex(2), 2, 2).complex;
  CHECK(same_up_to_iso(edge, cycle_graph(4)));
  CHECK_THROWS(deleted_join(full_simplex(2), 2, 3));
  CHECK_THROWS(deleted_join(full_simplex(2), 1, 2));
}

TEST_CASE("deleted join matches tuple enumeration") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 80; ++t) {
    const std::size_t n = 1 + t % 5;
    const std::uint32_t r = 2 + t % 3;
    const std::uint32_t l = 2 + static_cast<std::uint32_t>((t / 3) % (r - 1));
    SimplicialComplex x(n, oracle::random_facets(n, rng, 1 + t % 3));
    auto dj = deleted_join(x, r, l);
    CHECK(face_set(dj.complex) == oracle::deleted_join(brute(x), n, r, l));
    for (VertexId v = 0; v < dj.complex.n_vertices(); ++v) CHECK(dj.factor_of[v] == JoinLabel{v / static_cast<std::uint32_t>(n), v % static_cast<VertexId>(n)});
  }
}

TEST_CASE("deleted join with l = r contains the pairwise one") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 6;
    SimplicialComplex x(n, oracle::random_facets(n, rng, 2));
    auto small = deleted_join(x, 3, 2).complex, big = deleted_join(x, 3, 3).complex;
    for (const auto& f : small.facets()) CHECK(big.contains_face(f));
  }
}

TEST_CASE("deleted product examples") {
  auto hex = deleted_product(full_simplex(3), 2, 2);
  CHECK(hex.f_vector() == std::vector<std::size_t>{6, 6});
  CHECK(hex.euler_characteristic() == 0);
  for (unsigned p : {2u, 3u, 5u}) CHECK(betti(hex, p).reduced == std::vector<std::size_t>{0, 0, 1});

  auto s0 = deleted_product(full_simplex(2), 2, 2);
  CHECK(s0.f_vector() == std::vector<std::size_t>{2});
  CHECK(s0.cells_by_dim[0] == std::vector<Cell>{{{0}, {1}}, {{1}, {0}}});

  // both deleted constructions give a circle here
  CHECK(betti(deleted_join(full_simplex(2), 2, 2).complex, 2).reduced == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("deleted product cells and boundary") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 4;
    const std::uint32_t r = 2 + t % 2;
    SimplicialComplex x(n, oracle::random_facets(n, rng, 2));
    auto cc = deleted_product(x, r, r);
    auto faces = brute(x);
    std::size_t expected = 0;
    // count r-tuples of nonempty faces with no vertex in r of them
    std::vector<oracle::Face> nonempty;
    for (const auto& f : faces)
      if (!f.empty()) nonempty.push_back(f);
    std::vector<std::size_t> pick(r, 0);
    while (true) {
      std::vector<std::size_t> mult(n, 0);
      bool ok = true;
      for (auto i : pick)
        for (auto v : nonempty[i]) ok = ok && ++mult[v] < r;
      expected += ok;
      std::size_t i = 0;
      while (i < r && ++pick[i] == nonempty.size()) pick[i++] = 0;
      if (i == r) break;
    }
    std::size_t total = 0;
    for (std::size_t k = 0; k < cc.cells_by_dim.size(); ++k) {
      total += cc.cells_by_dim[k].size();
      for (const auto& c : cc.cells_by_dim[k]) CHECK(cell_dim(c) == static_cast<int>(k));
    }
    CHECK(total == expected);
    for (unsigned p : {2u, 3u, 5u}) CHECK(boundary_squares_to_zero(cc, p));
  }
}

TEST_CASE("test space examples") {
  auto k = test_space_K(Coloring({0, 1, 2}), 3).complex;
  CHECK(same_up_to_iso(k, join_power(discrete_points(3), 3).complex));

  auto k21 = test_space_K(Coloring({0, 0, 1}), 3).complex;
  auto expect = join(chessboard(3, 2), chessboard(3, 1)).complex;
  CHECK(same_up_to_iso(k21, expect));
  CHECK(euler_characteristic(k21) == euler_characteristic(expect));

  auto two = test_space_K(Coloring({0}), 2).complex;
  CHECK(two.facets() == std::vector<Face>{{0}, {1}});
}

TEST_CASE("rainbow deleted join equals the chessboard join under the fixed relabeling") {
  for (std::uint32_t r : {2u, 3u})
    for (std::size_t n = 1; n <= 6; ++n)
      for_each_coloring(n, r - 1, [&](const std::vector<int>& colors) {
        Coloring c(colors);
        auto dj = deleted_join(rainbow_subcomplex(n, c), r, 2).complex;
        auto k = test_space_K(c, r).complex;
        auto map = rainbow_to_test_space(c, r);
        CHECK(is_isomorphism(dj, k, map));
        // apply the map by hand to every face
        oracle::FaceSet image;
        for (auto f : face_set(dj)) {
          for (auto& v : f) v = map[v];
          std::sort(f.begin(), f.end());
          image.insert(f);
        }
        CHECK(image == face_set(k));
      });
  // a wrong map is rejected
  Coloring c({0, 1});
  auto dj = deleted_join(rainbow_subcomplex(2, c), 2, 2).complex;
  std::vector<VertexId> id{0, 1, 2, 3};
  CHECK_FALSE(is_isomorphism(dj, join(discrete_points(2), full_simplex(2)).complex, id));
}

TEST_CASE("cyclic action") {
  auto sq = join_power(discrete_points(2), 2);
  auto a = cyclic_action(sq);
  CHECK(a.order == 2);
  CHECK(a.generator == std::vector<VertexId>{2, 3, 0, 1});

  auto dj = deleted_join(full_simplex(3), 3, 2);
  auto g = cyclic_action(dj);
  CHECK(g.order == 3);
  for (std::uint32_t k = 1; k < 3; ++k) CHECK(g.power(k) != g.power(0));
  std::vector<VertexId> id(dj.complex.n_vertices());
  std::iota(id.begin(), id.end(), VertexId{0});
  CHECK(g.power(3) == id);
  for (const auto& f : dj.complex.facets()) {
    auto h = g.apply(f);
    CHECK(dj.complex.contains_face(h));
  }
  // r-fold composition of the generator is the identity
  for (const auto& colors : std::vector<std::vector<int>>{{0, 0, 1}, {0, 1, 1, 2}}) {
    auto k = test_space_K(Coloring(colors), 3);
    auto act = cyclic_action(k);
    std::vector<VertexId> v(k.complex.n_vertices());
    std::iota(v.begin(), v.end(), VertexId{0});
    auto w = v;
    for (int i = 0; i < 3; ++i)
      for (auto& x : w) x = act.generator[x];
    CHECK(w == v);
  }
  // single copy is malformed
  LabeledJoinComplex one{full_simplex(2), {{0, 0}, {0, 1}}, 1};
  CHECK_THROWS_AS(cyclic_action(one), ConstructionError);
}

TEST_CASE("freeness examples") {
  auto sq = join_power(discrete_points(2), 2);
  auto f = is_free(sq, cyclic_action(sq));
  CHECK_FALSE(f.free);
  CHECK(f.witness == Face{0, 2});
  CHECK(f.power == 1);
  for (std::uint32_t r : {2u, 3u, 5u})
    for (std::size_t n = 1; n <= 4; ++n) {
      auto dj = deleted_join(full_simplex(n), r, 2);
      CHECK(is_free(dj, cyclic_action(dj)).free);
    }
}

TEST_CASE("freeness agrees with exhaustive invariant-face search") {
  // every complex on <= 5 vertices drawn at random, r in 2..5
  std::mt19937_64 rng(77);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 1 + t % 5;
    const std::uint32_t r = 2 + t % 4;
    SimplicialComplex x(n, oracle::random_facets(n, rng, 1 + t % 3));
    auto dj = deleted_join(x, r, 2);
    auto fast = is_free(dj, cyclic_action(dj));
    auto slow = oracle::invariant_face(face_set(dj.complex), n, r);
    CHECK(fast.free == !slow.has_value());
    CHECK(fast.free);
  }
  // full joins and l = r deleted joins do have invariant faces
  for (std::uint32_t r : {2u, 3u, 4u}) {
    auto j = join_power(full_simplex(2), r);
    auto fast = is_free(j, cyclic_action(j));
    auto slow = oracle::invariant_face(face_set(j.complex), 2, r);
    REQUIRE(slow.has_value());
    CHECK_FALSE(fast.free);
    auto act = cyclic_action(j);
    CHECK(act.apply(fast.witness, fast.power) == fast.witness);
    CHECK(j.complex.contains_face(fast.witness));
  }
}

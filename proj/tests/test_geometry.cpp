#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ctv/geometry.hpp"
#include "ctv/serialize.hpp"
#include "oracles.hpp"

using namespace ctv;

namespace {

Rational q(long n, long d = 1) {
  Rational x(n, d);
  x.canonicalize();
  return x;
}

ColoredConfiguration config_of(std::size_t d, std::uint32_t r, std::vector<Point> pts, std::vector<int> colors,
                               Target target = Target::euclidean) {
  ColoredConfiguration c;
  c.d = d;
  c.r = r;
  c.points = std::move(pts);
  c.coloring = Coloring(std::move(colors));
  c.target = target;
  return c;
}

std::vector<std::vector<Point>> sets_of(const ColoredConfiguration& c, const std::vector<Face>& parts) {
  std::vector<std::vector<Point>> out;
  for (const auto& p : parts) {
    std::vector<Point> s;
    for (auto v : p) s.push_back(c.points[v]);
    out.push_back(s);
  }
  return out;
}

// Part systems with a common point, by candidate-point enumeration.
std::set<std::vector<Face>> oracle_valid(const ColoredConfiguration& c) {
  std::set<std::vector<Face>> out;
  oracle::each_partition(c.points.size(), c.r, c.coloring.colors(), [&](const std::vector<Face>& parts) {
    if (oracle::common_point(sets_of(c, parts))) out.insert(parts);
  });
  return out;
}

std::set<std::vector<Face>> library_valid(const ColoredConfiguration& c) {
  std::set<std::vector<Face>> out;
  for (const auto& p : all_partitions(c)) out.insert(p.parts);
  return out;
}

// Re-derive membership from the raw weights, without verify_partition.
bool certified(const ColoredConfiguration& c, const TverbergPartition& p) {
  std::set<VertexId> used;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    Rational total = 0;
    Point s(c.d, Rational(0));
    std::set<int> colors;
    for (std::size_t j = 0; j < p.parts[i].size(); ++j) {
      const auto v = p.parts[i][j];
      if (!used.insert(v).second || !colors.insert(c.coloring.color(v)).second) return false;
      const Rational& w = p.weights[i][j];
      if (w < 0) return false;
      total += w;
      for (std::size_t k = 0; k < c.d; ++k) s[k] += w * c.points[v][k];
    }
    if (c.target == Target::torus)
      for (std::size_t k = 0; k < c.d; ++k) s[k] += p.translates[i][k];
    if (total != 1 || s != p.witness) return false;
  }
  return p.parts.size() == c.r;
}

ColoredConfiguration small_random(std::mt19937_64& rng, std::size_t d, std::uint32_t r, std::size_t n, long span) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    Point p;
    for (std::size_t k = 0; k < d; ++k) p.push_back(q(static_cast<long>(rng() % (2 * span + 1)) - span));
    pts.push_back(p);
  }
  std::vector<int> colors(n);
  for (auto& c : colors) c = static_cast<int>(rng() % (n / 2 + 1));
  return config_of(d, r, pts, colors);
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("6/4") == q(3, 2));
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(parse_rational("-10/5")) == "-2");
  CHECK(parse_rational("+7") == 7);
  for (const char* bad : {"", "1/0", "1/-2", "a", "1/", "/2", "1.5", "1/2/3", " 1"})
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
}

TEST_CASE("intersect_hulls examples") {
  auto same = intersect_hulls({{{q(3), q(4)}}, {{q(3), q(4)}}});
  REQUIRE(same.found);
  CHECK(same.point == Point{q(3), q(4)});

  auto diag = intersect_hulls({{{q(0), q(0)}, {q(1), q(1)}}, {{q(1), q(0)}, {q(0), q(1)}}});
  REQUIRE(diag.found);
  CHECK(diag.point == Point{q(1, 2), q(1, 2)});

  auto apart = intersect_hulls({{{q(0)}, {q(1)}}, {{q(2)}, {q(3)}}});
  CHECK_FALSE(apart.found);
  CHECK_FALSE(apart.infeasibility_certificate.empty());

  CHECK_THROWS_AS(intersect_hulls({{{q(0)}}, {{q(0), q(1)}}}), DimensionMismatch);
  CHECK_THROWS(intersect_hulls({{{q(0)}}, {}}));
}

TEST_CASE("intersect_hulls agrees with candidate-point enumeration") {
  std::mt19937_64 rng(2);
  std::size_t hits = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t d = 1 + t % 2, r = 2 + (t / 2) % 2;
    std::vector<std::vector<Point>> sets(r);
    for (auto& s : sets) {
      const std::size_t k = 1 + rng() % 3;
      for (std::size_t i = 0; i < k; ++i) {
        Point p;
        for (std::size_t c = 0; c < d; ++c) p.push_back(q(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 2)));
        s.push_back(p);
      }
    }
    auto lib = intersect_hulls(sets);
    auto ref = oracle::common_point(sets);
    CHECK(lib.found == ref.has_value());
    if (lib.found) {
      ++hits;
      for (const auto& s : sets) CHECK(oracle::in_hull(lib.point, s));
    }
  }
  CHECK(hits > 40);
}

TEST_CASE("torus_intersect examples") {
  auto a = torus_intersect({{{q(0)}, {q(4, 5)}}, {{q(2, 5)}}});
  REQUIRE(a.found);
  CHECK(a.point == Point{q(2, 5)});
  CHECK(a.translates == std::vector<Translate>{{0}, {0}});

  CHECK_FALSE(torus_intersect({{{q(9, 10)}}, {{q(0)}}}).found);

  // hull [1/10, 9/10] shifted by -1 is [-9/10, -1/10], which misses 0
  CHECK_FALSE(torus_intersect({{{q(0)}}, {{q(9, 10)}, {q(1, 10)}}}).found);

  CHECK_THROWS(torus_intersect({{{q(1)}}, {{q(0)}}}));
  CHECK_THROWS(torus_intersect({{{q(-1, 2)}}, {{q(0)}}}));
}

TEST_CASE("lifts in the unit cube only ever meet at translate zero") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + t % 2;
    std::vector<std::vector<Point>> sets(2 + t % 2);
    for (auto& s : sets)
      for (std::size_t i = 0, k = 1 + rng() % 3; i < k; ++i) {
        Point p;
        for (std::size_t c = 0; c < d; ++c) p.push_back(q(static_cast<long>(rng() % 10), 10));
        s.push_back(p);
      }
    auto tor = torus_intersect(sets);
    CHECK(tor.found == intersect_hulls(sets).found);
    if (tor.found)
      for (const auto& tr : tor.translates) CHECK(tr == Translate(d, 0));
  }
}

TEST_CASE("find_partition examples") {
  auto line = config_of(1, 2, {{q(0)}, {q(1)}, {q(2)}}, {0, 1, 2});
  auto rep = find_partition(line);
  REQUIRE(rep.outcome == Outcome::found);
  CHECK(rep.partition->parts == std::vector<Face>{{0, 2}, {1}});
  CHECK(rep.partition->witness == Point{q(1)});
  CHECK(rep.warnings.empty());

  auto tight = config_of(1, 2, {{q(0)}, {q(1)}, {q(2)}}, {0, 1, 0});
  auto none = find_partition(tight);
  CHECK(none.outcome == Outcome::none);
  CHECK(none.exhaustive);
  CHECK(none.partitions_examined == 5);
  CHECK(none.warnings.size() == 1);

  auto sq = config_of(2, 2, {{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}}, {0, 1, 2, 3});
  auto found = find_partition(sq);
  REQUIRE(found.outcome == Outcome::found);
  CHECK(found.partition->witness == Point{q(1, 2), q(1, 2)});
  CHECK(found.partition->parts == std::vector<Face>{{0, 3}, {1, 2}});
}

TEST_CASE("valid part systems match the oracle") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 120; ++t) {
    const std::size_t d = 1 + t % 2;
    const std::uint32_t r = 2 + (t / 2) % 2;
    const std::size_t n = r + 1 + t % 4;
    auto c = small_random(rng, d, r, n, 3);
    auto lib = library_valid(c);
    CHECK(lib == oracle_valid(c));
    auto rep = find_partition(c);
    if (lib.empty()) {
      CHECK(rep.outcome == Outcome::none);
      auto naive = naive_enumeration(c);
      CHECK(naive.valid == 0);
      CHECK(naive.candidates == rep.partitions_examined);
    } else {
      REQUIRE(rep.outcome == Outcome::found);
      CHECK(rep.partition->parts == all_partitions(c).front().parts);
      CHECK(certified(c, *rep.partition));
    }
  }
}

TEST_CASE("candidate count matches the unpruned enumerator") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    auto c = small_random(rng, 1, 2 + t % 3, 4 + t % 4, 5);
    std::uint64_t pruned = 0, brute = 0;
    for_each_candidate(c, [&](const std::vector<Face>&) {
      ++pruned;
      return true;
    });
    oracle::each_partition(c.points.size(), c.r, c.coloring.colors(), [&](const std::vector<Face>&) { ++brute; });
    CHECK(pruned == brute);
    CHECK(naive_enumeration(c).candidates == brute);
  }
}

TEST_CASE("theorem holds on random valid configurations") {
  std::mt19937_64 rng(6);
  for (auto [d, r] : std::vector<std::pair<std::size_t, std::uint32_t>>{{1, 2}, {2, 2}, {1, 3}, {2, 3}})
    for (int t = 0; t < 15; ++t) {
      auto c = random_configuration(d, r, Target::euclidean, rng);
      CHECK(c.hypothesis_warnings().empty());
      auto rep = find_partition(c);
      REQUIRE(rep.outcome == Outcome::found);
      CHECK(verify_partition(c, *rep.partition));
      CHECK(certified(c, *rep.partition));
    }
  for (std::size_t d : {1u, 2u})
    for (int t = 0; t < 15; ++t) {
      auto c = random_configuration(d, 2, Target::torus, rng);
      auto rep = find_partition(c);
      REQUIRE(rep.outcome == Outcome::found);
      CHECK(certified(c, *rep.partition));
    }
}

TEST_CASE("affine invariance") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 1 + t % 2;
    auto c = small_random(rng, d, 2 + t % 2, 5, 4);
    // x -> A x + b with det A != 0
    std::vector<std::vector<Rational>> a;
    do {
      a.assign(d, std::vector<Rational>(d));
      for (auto& row : a)
        for (auto& v : row) v = q(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 2));
    } while ((d == 1 ? a[0][0] : a[0][0] * a[1][1] - a[0][1] * a[1][0]) == 0);
    auto moved = c;
    for (auto& p : moved.points) {
      Point np(d, q(5, 3));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) np[i] += a[i][j] * p[j];
      p = np;
    }
    CHECK(library_valid(c) == library_valid(moved));
    CHECK(find_partition(c).outcome == find_partition(moved).outcome);
  }
}

TEST_CASE("job count never changes the report") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    auto c = random_configuration(1 + t % 2, 2 + t % 2, Target::euclidean, rng);
    const auto base = report_to_json(find_partition(c, {1, 0})).dump();
    for (unsigned jobs : {2u, 3u, 8u}) CHECK(report_to_json(find_partition(c, {jobs, 0})).dump() == base);
  }
  auto tight = config_of(1, 3, {{q(0)}, {q(1)}, {q(2)}, {q(3)}, {q(4)}}, {0, 1, 0, 2, 0});
  const auto base = report_to_json(find_partition(tight, {1, 0})).dump();
  for (unsigned jobs : {2u, 8u}) CHECK(report_to_json(find_partition(tight, {jobs, 0})).dump() == base);
}

TEST_CASE("budget exhaustion is never reported as NONE") {
  auto tight = *find_tightness_witness(1, 3, 500).witness;
  auto full = find_partition(tight);
  REQUIRE(full.outcome == Outcome::none);
  for (std::uint64_t b = 1; b < full.partitions_examined; b += 3)
    for (unsigned jobs : {1u, 4u}) {
      auto rep = find_partition(tight, {jobs, b});
      CHECK(rep.outcome == Outcome::budget_exhausted);
      CHECK_FALSE(rep.exhaustive);
      CHECK(rep.partitions_examined == b);
    }
  auto enough = find_partition(tight, {1, full.partitions_examined});
  CHECK(enough.outcome == Outcome::none);
  CHECK(enough.exhaustive);
}

TEST_CASE("tightness witnesses") {
  for (auto [d, r] : std::vector<std::pair<std::size_t, std::uint32_t>>{{1, 2}, {1, 3}, {2, 2}}) {
    auto t = find_tightness_witness(d, r, 500);
    REQUIRE(t.witness.has_value());
    const auto& w = *t.witness;
    CHECK(w.points.size() == (d + 1) * (r - 1) + 1);
    std::vector<std::size_t> sizes;
    for (const auto& cls : w.coloring.classes()) sizes.push_back(cls.size());
    std::sort(sizes.rbegin(), sizes.rend());
    CHECK(sizes.front() == r);
    for (std::size_t i = 1; i < sizes.size(); ++i) CHECK(sizes[i] == 1);
    CHECK(t.report.outcome == Outcome::none);
    CHECK(oracle_valid(w).empty());
    CHECK(naive_enumeration(w).valid == 0);
  }
  auto first = find_tightness_witness(1, 2, 500);
  CHECK(first.witness->coloring.colors() == std::vector<int>{0, 1, 0});
  CHECK(first.witness->points == std::vector<Point>{{q(0)}, {q(1)}, {q(2)}});
  CHECK_FALSE(find_tightness_witness(2, 2, 0).witness.has_value());
}

TEST_CASE("reduction count and inequality") {
  CHECK(reduction_count(1, 2) == 2);
  CHECK(check_reduction_inequality(1, 2, 1, 2));
  CHECK(reduction_count(3, 2) == 4);
  CHECK(reduction_count(2, 3) == 2);
  CHECK(check_reduction_inequality(2, 2, 2, 3));
  CHECK_FALSE(check_reduction_inequality(1, 0, 1, 2));
  for (std::size_t d = 1; d <= 6; ++d)
    for (std::uint32_t r = 2; r <= 5; ++r) {
      std::size_t g = 0;
      while (g * (r - 1) <= d) ++g;
      CHECK(reduction_count(d, r) == g);
      CHECK(check_reduction_inequality(d, g, d, r));
    }
}

TEST_CASE("lift and roundtrip") {
  auto line = config_of(1, 2, {{q(0)}, {q(1)}, {q(2)}}, {0, 1, 2});
  auto up = lift_configuration(line);
  CHECK(up.d == 2);
  CHECK(up.points == std::vector<Point>{{q(0), q(0)}, {q(1), q(0)}, {q(2), q(0)}, {q(2), q(1)}});
  CHECK(up.coloring.colors() == std::vector<int>{0, 1, 2, 3});
  CHECK(up.hypothesis_warnings().empty());

  std::mt19937_64 rng(10);
  auto c = random_configuration(2, 3, Target::euclidean, rng);
  auto lifted = lift_configuration(c);
  CHECK(lifted.points.size() == c.points.size() + 2);
  CHECK(lifted.coloring.max_class_size() <= 2);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    Point front = c.points[i];
    front.push_back(0);
    CHECK(lifted.points[i] == front);
  }

  auto rt = verify_reduction_roundtrip(line);
  CHECK(rt.ok);
  CHECK(rt.lifted_partitions > 0);
  auto tight = verify_reduction_roundtrip(config_of(1, 2, {{q(0)}, {q(1)}, {q(2)}}, {0, 1, 0}));
  CHECK(tight.ok);
  CHECK(tight.lifted_partitions == 0);
  auto collinear = config_of(1, 2, {{q(-3)}, {q(5, 2)}, {q(7)}}, {0, 1, 2});
  CHECK(verify_reduction_roundtrip(collinear).ok);
  for (int t = 0; t < 10; ++t) CHECK(verify_reduction_roundtrip(random_configuration(1 + t % 2, 2, Target::euclidean, rng)).ok);
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(config_of(2, 2, {{q(0)}}, {0}).validate(), DimensionMismatch);
  CHECK_THROWS(config_of(1, 2, {{q(0)}}, {0, 1}).validate());
  CHECK_THROWS(config_of(1, 1, {{q(0)}}, {0}).validate());
  CHECK_THROWS(config_of(1, 2, {{q(1)}}, {0}, Target::torus).validate());
  CHECK_NOTHROW(config_of(1, 2, {{q(99, 100)}}, {0}, Target::torus).validate());
}

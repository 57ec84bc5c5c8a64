#include "ctv/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

namespace ctv {

namespace {

void require_same_dimension(const std::vector<std::vector<Point>>& point_sets) {
  if (point_sets.empty()) throw std::invalid_argument("need at least one point set");
  const std::size_t d = point_sets.front().empty() ? 0 : point_sets.front().front().size();
  for (const auto& set : point_sets) {
    if (set.empty()) throw std::invalid_argument("point sets must be nonempty");
    for (const auto& p : set)
      if (p.size() != d) throw DimensionMismatch("points of different dimensions");
  }
}

}  // namespace

HullIntersection intersect_hulls(const std::vector<std::vector<Point>>& point_sets) {
  require_same_dimension(point_sets);
  const std::size_t r = point_sets.size();
  const std::size_t d = point_sets.front().front().size();

  std::vector<std::size_t> offset(r + 1, 0);
  for (std::size_t i = 0; i < r; ++i) offset[i + 1] = offset[i] + point_sets[i].size();
  const std::size_t vars = offset[r];

  RationalMatrix a;
  std::vector<Rational> b;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rational> row(vars);
    for (std::size_t j = offset[i]; j < offset[i + 1]; ++j) row[j] = 1;
    a.push_back(std::move(row));
    b.push_back(1);
  }
  for (std::size_t i = 1; i < r; ++i)
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<Rational> row(vars);
      for (std::size_t j = 0; j < point_sets[0].size(); ++j) row[offset[0] + j] = point_sets[0][j][c];
      for (std::size_t j = 0; j < point_sets[i].size(); ++j) row[offset[i] + j] = -point_sets[i][j][c];
      a.push_back(std::move(row));
      b.push_back(0);
    }

  auto lp = solve_feasibility(a, b);
  HullIntersection out;
  out.found = lp.feasible;
  if (!lp.feasible) {
    out.infeasibility_certificate = std::move(lp.farkas);
    return out;
  }
  out.point.assign(d, Rational(0));
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rational> w(lp.x.begin() + static_cast<std::ptrdiff_t>(offset[i]),
                            lp.x.begin() + static_cast<std::ptrdiff_t>(offset[i + 1]));
    out.weights.push_back(std::move(w));
  }
  for (std::size_t j = 0; j < point_sets[0].size(); ++j)
    for (std::size_t c = 0; c < d; ++c) out.point[c] += out.weights[0][j] * point_sets[0][j][c];
  return out;
}

TorusIntersection torus_intersect(const std::vector<std::vector<Point>>& point_sets) {
  require_same_dimension(point_sets);
  for (const auto& set : point_sets)
    for (const auto& p : set)
      for (const auto& x : p)
        if (x < 0 || x >= 1) throw std::invalid_argument("torus lift " + format_rational(x) + " outside [0,1)");
  const std::size_t r = point_sets.size();
  const std::size_t d = point_sets.front().front().size();
  const std::size_t free_coords = (r - 1) * d;

  // Odometer over {-1,0,1}^free_coords, most significant coordinate first.
  std::vector<long> t(free_coords, -1);
  std::vector<std::vector<Point>> shifted = point_sets;
  while (true) {
    for (std::size_t i = 1; i < r; ++i)
      for (std::size_t j = 0; j < point_sets[i].size(); ++j)
        for (std::size_t c = 0; c < d; ++c) shifted[i][j][c] = point_sets[i][j][c] + t[(i - 1) * d + c];
    if (auto h = intersect_hulls(shifted)) {
      TorusIntersection out;
      out.found = true;
      out.point = std::move(h.point);
      out.weights = std::move(h.weights);
      out.translates.push_back(Translate(d, 0));
      for (std::size_t i = 1; i < r; ++i)
        out.translates.emplace_back(t.begin() + static_cast<std::ptrdiff_t>((i - 1) * d),
                                    t.begin() + static_cast<std::ptrdiff_t>(i * d));
      return out;
    }
    std::size_t k = free_coords;
    while (k > 0 && t[k - 1] == 1) t[--k] = -1;
    if (k == 0) return {};
    ++t[k - 1];
  }
}

void ColoredConfiguration::validate() const {
  if (d == 0) throw std::invalid_argument("d must be >= 1");
  if (r < 2) throw std::invalid_argument("r must be >= 2");
  if (points.empty()) throw std::invalid_argument("configuration has no points");
  if (points.size() > 64) throw std::invalid_argument("at most 64 points supported");
  if (coloring.size() != points.size()) throw std::invalid_argument("colors and points differ in length");
  for (const auto& p : points) {
    if (p.size() != d) throw DimensionMismatch("point dimension differs from d");
    if (target == Target::torus)
      for (const auto& x : p)
        if (x < 0 || x >= 1) throw std::invalid_argument("torus lift " + format_rational(x) + " outside [0,1)");
  }
}

std::vector<std::string> ColoredConfiguration::hypothesis_warnings() const {
  std::vector<std::string> w;
  const std::size_t expected = (d + 1) * (r - 1) + 1;
  if (points.size() != expected)
    w.push_back("expected N+1 = " + std::to_string(expected) + " points, got " + std::to_string(points.size()));
  if (coloring.max_class_size() > r - 1)
    w.push_back("a color class has " + std::to_string(coloring.max_class_size()) + " > r-1 = " +
                std::to_string(r - 1) + " vertices");
  return w;
}

namespace {

struct SearchState {
  std::vector<Face> parts;
  std::vector<std::vector<int>> part_colors;
  std::size_t opened = 0;
  std::size_t next_vertex = 0;
};

class Enumerator {
 public:
  explicit Enumerator(const ColoredConfiguration& c) : config_(c), n_(c.points.size()), r_(c.r) {}

  SearchState root() const {
    SearchState s;
    s.parts.resize(r_);
    s.part_colors.resize(r_);
    return s;
  }

  // Depth-first in lexicographic order (unused < part 1 < ... < part r) from
  // `s` down to depth `stop`, calling leaf(state) there. leaf returns false to stop.
  template <class Leaf>
  bool walk(SearchState& s, std::size_t stop, Leaf&& leaf) const {
    if (s.next_vertex == stop) return leaf(s);
    const auto v = static_cast<VertexId>(s.next_vertex);
    const std::size_t remaining = n_ - s.next_vertex - 1;
    const int color = config_.coloring.color(v);
    ++s.next_vertex;
    bool go_on = true;
    // unopened parts must still fit in the remaining vertices
    const bool room = r_ - s.opened <= remaining;
    if (room) go_on = walk(s, stop, leaf);
    for (std::size_t k = 0; go_on && k < r_ && k <= s.opened; ++k) {
      const bool opening = k == s.opened;
      if (!opening && !room) continue;
      if (opening && r_ - (s.opened + 1) > remaining) break;
      auto& pc = s.part_colors[k];
      if (std::find(pc.begin(), pc.end(), color) != pc.end()) continue;
      s.parts[k].push_back(v);
      pc.push_back(color);
      if (opening) ++s.opened;
      go_on = walk(s, stop, leaf);
      if (opening) --s.opened;
      pc.pop_back();
      s.parts[k].pop_back();
    }
    --s.next_vertex;
    return go_on;
  }

  std::vector<SearchState> prefixes(std::size_t depth) const {
    std::vector<SearchState> out;
    SearchState s = root();
    walk(s, std::min(depth, n_), [&](const SearchState& st) {
      out.push_back(st);
      return true;
    });
    return out;
  }

  std::size_t n() const { return n_; }

 private:
  const ColoredConfiguration& config_;
  std::size_t n_;
  std::size_t r_;
};

std::vector<std::vector<Point>> point_sets_of(const ColoredConfiguration& config, const std::vector<Face>& parts) {
  std::vector<std::vector<Point>> sets;
  for (const auto& part : parts) {
    std::vector<Point> s;
    for (VertexId v : part) s.push_back(config.points[v]);
    sets.push_back(std::move(s));
  }
  return sets;
}

struct ChunkResult {
  std::uint64_t count = 0;
  std::optional<TverbergPartition> found;
  bool ran = false;
};

constexpr std::size_t kPrefixDepth = 4;

}  // namespace

std::optional<TverbergPartition> test_parts(const ColoredConfiguration& config, const std::vector<Face>& parts) {
  auto sets = point_sets_of(config, parts);
  if (config.target == Target::euclidean) {
    auto h = intersect_hulls(sets);
    if (!h) return std::nullopt;
    return TverbergPartition{parts, std::move(h.point), {}, std::move(h.weights)};
  }
  auto t = torus_intersect(sets);
  if (!t) return std::nullopt;
  return TverbergPartition{parts, std::move(t.point), std::move(t.translates), std::move(t.weights)};
}

void for_each_candidate(const ColoredConfiguration& config,
                        const std::function<bool(const std::vector<Face>&)>& fn) {
  config.validate();
  Enumerator e(config);
  SearchState s = e.root();
  e.walk(s, e.n(), [&](const SearchState& st) { return fn(st.parts); });
}

TverbergReport find_partition(const ColoredConfiguration& config, const SearchOptions& options) {
  config.validate();
  TverbergReport report;
  report.warnings = config.hypothesis_warnings();

  Enumerator e(config);
  const auto prefixes = e.prefixes(kPrefixDepth);
  std::vector<ChunkResult> chunks(prefixes.size());
  const std::uint64_t cap = options.budget == 0 ? 0 : options.budget + 1;

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_found{prefixes.size()};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= prefixes.size()) return;
      if (i > first_found.load()) continue;
      SearchState s = prefixes[i];
      ChunkResult& out = chunks[i];
      out.ran = true;
      e.walk(s, e.n(), [&](const SearchState& st) {
        if (cap != 0 && out.count == cap) return false;
        ++out.count;
        if (auto p = test_parts(config, st.parts)) {
          out.found = std::move(p);
          std::size_t cur = first_found.load();
          while (i < cur && !first_found.compare_exchange_weak(cur, i)) {
          }
          return false;
        }
        return true;
      });
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Merge in lexicographic chunk order.
  std::uint64_t examined = 0;
  for (auto& c : chunks) {
    examined += c.count;
    if (options.budget != 0 && examined > options.budget) {
      report.outcome = Outcome::budget_exhausted;
      report.partitions_examined = options.budget;
      report.exhaustive = false;
      return report;
    }
    if (c.found) {
      report.outcome = Outcome::found;
      report.partition = std::move(c.found);
      report.partitions_examined = examined;
      report.exhaustive = false;
      return report;
    }
  }
  report.outcome = Outcome::none;
  report.partitions_examined = examined;
  report.exhaustive = true;
  return report;
}

std::vector<TverbergPartition> all_partitions(const ColoredConfiguration& config) {
  std::vector<TverbergPartition> out;
  for_each_candidate(config, [&](const std::vector<Face>& parts) {
    if (auto p = test_parts(config, parts)) out.push_back(std::move(*p));
    return true;
  });
  return out;
}

bool verify_partition(const ColoredConfiguration& config, const TverbergPartition& partition) {
  const std::size_t n = config.points.size();
  if (partition.parts.size() != config.r || partition.weights.size() != config.r) return false;
  if (partition.witness.size() != config.d) return false;
  const bool torus = config.target == Target::torus;
  if (torus && partition.translates.size() != config.r) return false;
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < config.r; ++i) {
    const Face& part = partition.parts[i];
    if (part.empty() || !std::is_sorted(part.begin(), part.end())) return false;
    for (VertexId v : part) {
      if (v >= n || used[v]) return false;
      used[v] = true;
    }
    if (!is_rainbow(part, config.coloring)) return false;
    const auto& w = partition.weights[i];
    if (w.size() != part.size()) return false;
    Rational total = 0;
    Point sum(config.d, Rational(0));
    for (std::size_t j = 0; j < part.size(); ++j) {
      if (w[j] < 0) return false;
      total += w[j];
      for (std::size_t c = 0; c < config.d; ++c) sum[c] += w[j] * config.points[part[j]][c];
    }
    if (total != 1) return false;
    if (torus) {
      const auto& t = partition.translates[i];
      if (t.size() != config.d) return false;
      for (std::size_t c = 0; c < config.d; ++c) {
        if (t[c] < -1 || t[c] > 1 || (i == 0 && t[c] != 0)) return false;
        sum[c] += t[c];
      }
    }
    if (sum != partition.witness) return false;
  }
  return true;
}

NaiveCount naive_enumeration(const ColoredConfiguration& config) {
  config.validate();
  const std::size_t n = config.points.size();
  const std::uint32_t r = config.r;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= (r + 1);
  std::uint64_t factorial = 1;
  for (std::uint32_t k = 2; k <= r; ++k) factorial *= k;

  NaiveCount out;
  std::vector<Face> parts(r);
  for (std::uint64_t code = 0; code < total; ++code) {
    for (auto& p : parts) p.clear();
    std::uint64_t c = code;
    for (VertexId v = 0; v < n; ++v) {
      auto k = static_cast<std::uint32_t>(c % (r + 1));
      c /= (r + 1);
      if (k > 0) parts[k - 1].push_back(v);
    }
    bool valid = true;
    for (const auto& p : parts)
      if (p.empty() || !is_rainbow(p, config.coloring)) valid = false;
    if (!valid) continue;
    ++out.candidates;
    if (test_parts(config, parts)) ++out.valid;
  }
  out.candidates /= factorial;
  out.valid /= factorial;
  return out;
}

namespace {

Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  std::uniform_int_distribution<long> num(lo, hi);
  long q = den(rng);
  Rational x(num(rng) * q + std::uniform_int_distribution<long>(0, q - 1)(rng), q);
  x.canonicalize();
  return x;
}

ColoredConfiguration tightness_instance(std::size_t d, std::uint32_t r, std::vector<Point> points,
                                        const std::vector<std::size_t>& cls) {
  std::vector<int> colors(points.size(), -1);
  for (auto v : cls) colors[v] = 0;
  int next = 1;
  for (auto& c : colors)
    if (c < 0) c = next++;
  ColoredConfiguration config;
  config.d = d;
  config.r = r;
  config.points = std::move(points);
  config.coloring = Coloring(std::move(colors));
  return config;
}

}  // namespace

TightnessResult find_tightness_witness(std::size_t d, std::uint32_t r, std::uint64_t budget, std::uint64_t seed,
                                       const SearchOptions& options) {
  if (d == 0 || r < 2) throw std::invalid_argument("tightness search needs d >= 1, r >= 2");
  const std::size_t n = (d + 1) * (r - 1) + 1;
  TightnessResult result;

  auto attempt = [&](ColoredConfiguration config) {
    ++result.configurations_tried;
    auto report = find_partition(config, options);
    if (report.outcome == Outcome::none) {
      result.witness = std::move(config);
      result.report = std::move(report);
      return true;
    }
    return false;
  };

  std::vector<Point> curve;
  for (std::size_t t = 0; t < n; ++t) {
    Point p;
    Rational power = 1;
    for (std::size_t c = 0; c < d; ++c) {
      power *= static_cast<long>(t);
      p.push_back(power);
    }
    curve.push_back(std::move(p));
  }

  // Every r-subset of positions along the moment curve, lexicographically.
  std::vector<std::size_t> cls(r);
  std::iota(cls.begin(), cls.end(), std::size_t{0});
  while (result.configurations_tried < budget) {
    if (attempt(tightness_instance(d, r, curve, cls))) return result;
    std::size_t i = r;
    while (i > 0 && cls[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++cls[i - 1];
    for (std::size_t j = i; j < r; ++j) cls[j] = cls[j - 1] + 1;
  }

  std::mt19937_64 rng(seed);
  while (result.configurations_tried < budget) {
    std::vector<Point> pts = curve;
    for (auto& p : pts)
      for (auto& x : p) x += random_rational(rng, -1, 0, 8) / 2;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> pick(perm.begin(), perm.begin() + r);
    std::sort(pick.begin(), pick.end());
    if (attempt(tightness_instance(d, r, std::move(pts), pick))) return result;
  }
  return result;
}

std::size_t reduction_count(std::size_t d, std::uint32_t r) {
  if (r < 2) throw std::invalid_argument("reduction_count needs r >= 2");
  return 1 + d / (r - 1);
}

bool check_reduction_inequality(std::size_t d_dim, std::size_t g, std::size_t e, std::uint32_t r) {
  return static_cast<unsigned long long>(r - 1) * (d_dim + g) > static_cast<unsigned long long>(r) * e;
}

ColoredConfiguration lift_configuration(const ColoredConfiguration& config) {
  config.validate();
  if (config.target != Target::euclidean) throw std::invalid_argument("lift needs a euclidean configuration");
  ColoredConfiguration out;
  out.d = config.d + 1;
  out.r = config.r;
  out.target = Target::euclidean;
  for (const auto& p : config.points) {
    Point q = p;
    q.push_back(0);
    out.points.push_back(std::move(q));
  }
  Point top = config.points.back();
  top.push_back(1);
  for (std::uint32_t k = 0; k + 1 < config.r; ++k) out.points.push_back(top);

  std::vector<int> colors = config.coloring.colors();
  const int fresh = *std::max_element(colors.begin(), colors.end()) + 1;
  colors.resize(out.points.size(), fresh);
  out.coloring = Coloring(std::move(colors));
  return out;
}

RoundtripReport verify_reduction_roundtrip(const ColoredConfiguration& config) {
  RoundtripReport rep;
  const auto lifted = lift_configuration(config);
  const std::size_t front = config.points.size();
  const std::size_t d = config.d;

  for (const auto& lp : all_partitions(lifted)) {
    ++rep.lifted_partitions;
    if (!verify_partition(lifted, lp)) {
      rep.failure = "lifted partition failed re-verification";
      return rep;
    }
    if (lp.witness[d] != 0) {
      rep.failure = "lifted witness off the front face height";
      return rep;
    }
    std::vector<Face> restricted;
    for (const auto& part : lp.parts) {
      Face f;
      for (VertexId v : part)
        if (v < front) f.push_back(v);
      if (f.empty()) {
        rep.failure = "restriction emptied a part";
        return rep;
      }
      restricted.push_back(std::move(f));
    }
    // The projected witness must lie in every restricted hull.
    Point projected(lp.witness.begin(), lp.witness.begin() + static_cast<std::ptrdiff_t>(d));
    std::vector<std::vector<Point>> sets{{projected}};
    for (const auto& f : restricted) {
      std::vector<Point> s;
      for (VertexId v : f) s.push_back(config.points[v]);
      sets.push_back(std::move(s));
    }
    if (!intersect_hulls(sets)) {
      rep.failure = "projected witness outside a restricted hull";
      return rep;
    }
    auto original = test_parts(config, restricted);
    if (!original || !verify_partition(config, *original)) {
      rep.failure = "restricted parts are not a valid partition";
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

Coloring random_coloring(std::size_t n, std::uint32_t r, std::mt19937_64& rng) {
  if (r < 2) throw std::invalid_argument("random coloring needs r >= 2");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> colors(n, 0);
  std::size_t i = 0;
  int color = 0;
  while (i < n) {
    std::size_t max_size = std::min<std::size_t>(r - 1, n - i);
    std::size_t size = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
    for (std::size_t k = 0; k < size; ++k) colors[order[i++]] = color;
    ++color;
  }
  return Coloring(std::move(colors));
}

ColoredConfiguration random_configuration(std::size_t d, std::uint32_t r, Target target, std::mt19937_64& rng) {
  ColoredConfiguration config;
  config.d = d;
  config.r = r;
  config.target = target;
  const std::size_t n = (d + 1) * (r - 1) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    Point p;
    for (std::size_t c = 0; c < d; ++c)
      p.push_back(target == Target::torus ? random_rational(rng, 0, 0, 12) : random_rational(rng, -16, 15, 8));
    config.points.push_back(std::move(p));
  }
  config.coloring = random_coloring(n, r, rng);
  return config;
}

}  // namespace ctv

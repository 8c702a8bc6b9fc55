#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "gdisc/arrangement.hpp"
#include "gdisc/graph.hpp"
#include "support.hpp"

using namespace gdisc;
using testing_support::disc;

namespace {

int find_edge(const AdjacencyGraph& g, int from, int to, TangentKind kind) {
  for (const auto& e : g.edges)
    if (e.from == from && e.to == to && e.kind == kind) return e.id;
  return -1;
}

// Crossings of the lifted angle difference through multiples of 2 pi, by dense
// uniform sampling over [lo, hi].
std::vector<double> dense_crossings(const TangentEdge& a, const TangentEdge& b, double lo,
                                    double hi, int samples) {
  std::vector<double> out;
  bool have = false;
  double prev_raw = 0.0, prev_d = 0.0, prev_t = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double t = lo + (hi - lo) * k / samples;
    auto x = a.solver.depart_angle(t);
    auto y = b.solver.depart_angle(t);
    if (!x || !y) {
      have = false;
      continue;
    }
    const double raw = wrap_angle(*x - *y);
    if (!have) {
      prev_raw = prev_d = raw;
      prev_t = t;
      have = true;
      continue;
    }
    const double d = prev_d + wrap_angle(raw - prev_raw);
    if (std::floor(d / kTwoPi) != std::floor(prev_d / kTwoPi)) out.push_back(0.5 * (t + prev_t));
    prev_raw = raw;
    prev_d = d;
    prev_t = t;
  }
  return out;
}

using Key = std::tuple<int, int>;

std::map<Key, std::vector<double>> brute_force(const AdjacencyGraph& g, int disc) {
  std::map<Key, std::vector<double>> out;
  const auto& dep = g.departing[disc];
  for (std::size_t x = 0; x < dep.size(); ++x)
    for (std::size_t y = x + 1; y < dep.size(); ++y)
      for (const PairRoot& r : curve_intersections(g, dep[x], dep[y]))
        out[{dep[x], dep[y]}].push_back(r.time);
  return out;
}

std::map<Key, std::vector<double>> from_sweep(const std::vector<IntersectionSequence>& seqs) {
  std::map<Key, std::vector<double>> out;
  for (const auto& s : seqs)
    for (const auto& ev : s.events)
      if (ev.edge < ev.other) out[{ev.edge, ev.other}].push_back(ev.time);
  for (auto& [_, v] : out) std::sort(v.begin(), v.end());
  return out;
}

bool same_multisets(const std::map<Key, std::vector<double>>& a,
                    const std::map<Key, std::vector<double>>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, va] : a) {
    auto it = b.find(k);
    if (it == b.end() || it->second.size() != va.size()) return false;
    for (std::size_t m = 0; m < va.size(); ++m)
      if (std::abs(va[m] - it->second[m]) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("graph edge counts") {
  CHECK(build_graph(testing_support::scene({disc(0, 0, 0, 1)})).edges.empty());
  CHECK(build_graph(testing_support::scene({disc(0, 0, 0, 1), disc(1, 5, 0, 1)})).edges.size() ==
        8);
  const auto g = build_graph(
      testing_support::scene({disc(0, 0, 0, 1), disc(1, 5, 0, 1), disc(2, 0, 7, 1)}));
  CHECK(g.edges.size() == 24);
  CHECK(g.departing[1].size() == 8);
  CHECK(g.arriving[1].size() == 8);
  CHECK(g.vertex_count() == 48);
}

TEST_CASE("mirror-symmetric scene has one crossing") {
  for (auto model : {TangentModel::Snapshot, TangentModel::SpaceTime}) {
    const Scene s = testing_support::scene(
        {disc(0, 0, 0, 1, {0.1}), disc(1, 10, 4, 1, {0.1}), disc(2, 10, -4, 1, {0.1})}, 1.0, 60.0);
    const auto g = build_graph(s, {model});
    const int a = find_edge(g, 0, 1, TangentKind::InnerRight);
    const int b = find_edge(g, 0, 2, TangentKind::InnerLeft);
    const auto roots = curve_intersections(g, a, b);
    REQUIRE(roots.size() == 1);
    CHECK(!roots[0].touching);
    // On the symmetry axis at the root.
    CHECK(std::abs(wrap_angle(*g.edges[a].solver.depart_angle(roots[0].time))) < 1e-9);
    const auto dense = dense_crossings(g.edges[a], g.edges[b], 0.0, 60.0, 100000);
    REQUIRE(dense.size() == 1);
    CHECK(std::abs(dense[0] - roots[0].time) < 60.0 / 100000);
  }
}

TEST_CASE("opposite branches toward one target do not meet") {
  const Scene s = testing_support::scene({disc(0, 0, 0, 1, {0.1}), disc(1, 10, 0, 1, {0.1})}, 1.0,
                                         40.0);
  const auto g = build_graph(s);
  CHECK(curve_intersections(g, find_edge(g, 0, 1, TangentKind::InnerLeft),
                            find_edge(g, 0, 1, TangentKind::InnerRight))
            .empty());
  CHECK(curve_intersections(g, find_edge(g, 0, 1, TangentKind::OuterLeft),
                            find_edge(g, 0, 1, TangentKind::OuterRight))
            .empty());
  const int e = find_edge(g, 0, 1, TangentKind::InnerLeft);
  CHECK(curve_intersections(g, e, e).empty());
}

TEST_CASE("small scenes") {
  const auto g1 = build_graph(testing_support::scene({disc(0, 0, 0, 1)}));
  CHECK(sweep_disc(g1, 0).empty());
  CHECK(build_intersection_set(g1).k == 0);
  CHECK(build_intersection_set(build_graph(testing_support::scene({}))).k == 0);

  const auto g2 = build_graph(
      testing_support::scene({disc(0, 0, 0, 1, {0.2}), disc(1, 7, 1, 2, {0.05})}, 1.0, 30.0));
  for (int i = 0; i < 2; ++i) {
    const auto seqs = sweep_disc(g2, i);
    CHECK(seqs.size() == 4);
    CHECK(same_multisets(from_sweep(seqs), brute_force(g2, i), 1e-8));
  }
}

TEST_CASE("sweep equals all-pairs on random scenes") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    RandomSceneOptions opt;
    opt.n = 3 + static_cast<int>(seed % 4);
    opt.beta = static_cast<int>(seed % 3);
    const Scene s = random_scene(opt, seed);
    const auto g = build_graph(s);
    const IntersectionSet set = build_intersection_set(g);
    long total = 0;
    for (int i = 0; i < s.size(); ++i) {
      SweepStats stats;
      const auto seqs = sweep_disc(g, i, {}, &stats);
      const auto bf = brute_force(g, i);
      INFO("seed ", seed, " disc ", i);
      CHECK(same_multisets(from_sweep(seqs), bf, 1e-8));
      for (const auto& [_, v] : bf) CHECK(static_cast<int>(v.size()) <= 16 * s.beta() + 8);
      total += stats.events;
      // Events sorted by time along each curve; both curves at the same point.
      for (const auto& seq : seqs)
        for (std::size_t m = 0; m < seq.events.size(); ++m) {
          const auto& ev = seq.events[m];
          if (m) CHECK(seq.events[m - 1].time <= ev.time);
          auto pa = g.edges[ev.edge].solver.solve(ev.time);
          auto pb = g.edges[ev.other].solver.solve(ev.time);
          REQUIRE(pa);
          REQUIRE(pb);
          CHECK(distance(pa->from, pb->from) < 1e-8 * std::max(1.0, g.scene.discs[i].radius(ev.time)));
        }
    }
    CHECK(set.k == total);
  }
}

TEST_CASE("root finder completeness against dense sampling") {
  for (std::uint64_t seed = 21; seed <= 23; ++seed) {
    RandomSceneOptions opt;
    opt.n = 4;
    opt.beta = static_cast<int>(seed % 3);
    const Scene s = random_scene(opt, seed);
    const auto g = build_graph(s);
    for (int i = 0; i < s.size(); ++i) {
      const auto& dep = g.departing[i];
      for (std::size_t x = 0; x < dep.size(); ++x)
        for (std::size_t y = x + 1; y < dep.size(); ++y) {
          const auto roots = curve_intersections(g, dep[x], dep[y]);
          const auto dense = dense_crossings(g.edges[dep[x]], g.edges[dep[y]], 0.0, s.horizon, 20000);
          for (double t : dense) {
            const bool found = std::any_of(roots.begin(), roots.end(), [&](const PairRoot& r) {
              return std::abs(r.time - t) <= s.horizon / 20000;
            });
            INFO("seed ", seed, " edges ", dep[x], " ", dep[y], " t ", t);
            CHECK(found);
          }
          for (const PairRoot& r : roots) {
            if (r.touching) continue;
            const double d = wrap_angle(*g.edges[dep[x]].solver.depart_angle(r.time) -
                                        *g.edges[dep[y]].solver.depart_angle(r.time));
            CHECK(std::abs(d) < 1e-9);
          }
        }
    }
  }
}

TEST_CASE("departure curves move outward") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RandomSceneOptions opt;
    opt.n = 3;
    opt.beta = static_cast<int>(seed % 3);
    const Scene s = random_scene(opt, seed);
    const auto g = build_graph(s);
    for (const auto& e : g.edges)
      for (const auto& piece : e.domain) {
        double prev = -1.0;
        for (int k = 0; k <= 200; ++k) {
          const double t = piece.lo + piece.length() * k / 200;
          auto st = e.solver.solve(t);
          if (!st) continue;
          const double r = distance(st->from, s.discs[e.from].center());
          if (!s.discs[e.from].is_static()) CHECK(r > prev);
          prev = r;
        }
      }
  }
}

TEST_CASE("sweep is deterministic under disc relabeling") {
  RandomSceneOptions opt;
  opt.n = 4;
  const Scene s = random_scene(opt, 5);
  Scene r = s;
  std::reverse(r.discs.begin(), r.discs.end());
  CHECK(build_intersection_set(build_graph(s)).k == build_intersection_set(build_graph(r)).k);
}

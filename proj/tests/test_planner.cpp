#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "gdisc/domination.hpp"
#include "gdisc/oracle.hpp"
#include "gdisc/planner.hpp"
#include "support.hpp"

using namespace gdisc;
using testing_support::disc;

namespace {

double static_disc_detour(double so, double od, double radius, double gap_angle) {
  // Point - circle - point: two tangents plus the arc between the tangent points.
  const double a = std::sqrt(so * so - radius * radius);
  const double b = std::sqrt(od * od - radius * radius);
  const double arc = gap_angle - std::acos(radius / so) - std::acos(radius / od);
  return a + b + radius * arc;
}

void check_path_shape(const QueryResult& r, const Scene& s, Vec2 src, Vec2 dst) {
  REQUIRE(r.status == QueryStatus::Found);
  REQUIRE(!r.path.legs.empty());
  CHECK(distance(r.path.legs.front().from, src) < 1e-9);
  CHECK(distance(r.path.legs.back().to, dst) < 1e-6);
  CHECK(r.path.legs.front().t_start == 0.0);
  CHECK(r.arrival_time == r.path.arrival_time());
  for (std::size_t m = 0; m < r.path.legs.size(); ++m) {
    const Leg& leg = r.path.legs[m];
    CHECK((leg.kind == LegKind::Tangent || leg.kind == LegKind::Spiral));
    if (m) CHECK(std::abs(leg.t_start - r.path.legs[m - 1].t_end) < 1e-9);
  }
  const VerifyReport rep = verify_path(s, r.path, 1e-6, 1e-3);
  INFO(rep.message);
  CHECK(rep.ok);
}

}  // namespace

TEST_CASE("augmentation counts") {
  const Preprocessed empty = preprocess(testing_support::scene({}));
  const AugmentedGraph a0 = augment_query(empty, {0, 0}, {3, 4});
  CHECK(a0.extra.size() == 1);
  CHECK(a0.is_query_edge(0));

  const Preprocessed one = preprocess(testing_support::scene({disc(0, 0, 0, 1)}));
  const AugmentedGraph a1 = augment_query(one, {-5, 0}, {5, 0});
  CHECK(a1.extra.size() == 5);  // s->d, 2 x s->disc, 2 x disc->d
  CHECK(a1.discs.size() == 3);

  CHECK_THROWS_AS(augment_query(one, {0.5, 0}, {5, 0}), EndpointError);
  try {
    augment_query(one, {-5, 0}, {0, 0.2});
  } catch (const EndpointError& e) {
    CHECK(e.which() == "destination");
    CHECK(e.disc_id() == 0);
  }
}

TEST_CASE("empty scene straight line") {
  const Scene s = testing_support::scene({});
  const auto t0 = std::chrono::steady_clock::now();
  const QueryResult r = query(preprocess(s), {0, 0}, {3, 4});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  REQUIRE(r.status == QueryStatus::Found);
  CHECK(std::abs(r.arrival_time - 5.0) < 1e-9);
  CHECK(r.path.legs.size() == 1);
  CHECK(secs < 0.1);

  const QueryResult same = query(preprocess(s), {1, 1}, {1, 1});
  CHECK(same.status == QueryStatus::Found);
  CHECK(same.arrival_time == 0.0);
}

TEST_CASE("single static disc detour") {
  const Scene s = testing_support::scene({disc(0, 0, 0, 1)});
  const Preprocessed pre = preprocess(s);
  const QueryResult r = query(pre, {-5, 0}, {5, 0});
  const double want = 2 * std::sqrt(24.0) + kPi - 2 * std::acos(0.2);
  CHECK(want == doctest::Approx(10.2008).epsilon(1e-4));
  CHECK(std::abs(static_disc_detour(5, 5, 1, kPi) - want) < 1e-12);
  check_path_shape(r, s, {-5, 0}, {5, 0});
  CHECK(std::abs(r.arrival_time - want) < 1e-4);
  CHECK(r.path.legs.size() == 3);

  // Asymmetric endpoints.
  const Vec2 src{-4, 1}, dst{6, -2};
  const QueryResult r2 = query(pre, src, dst);
  check_path_shape(r2, s, src, dst);
  const double gap = std::abs(wrap_angle(angle_of(src) - angle_of(dst)));
  CHECK(std::abs(r2.arrival_time - static_disc_detour(norm(src), norm(dst), 1, gap)) < 1e-4);

  // Unobstructed pair in the same scene goes straight.
  const QueryResult r3 = query(pre, {-5, 3}, {5, 3});
  REQUIRE(r3.status == QueryStatus::Found);
  CHECK(std::abs(r3.arrival_time - 10.0) < 1e-9);
}

TEST_CASE("edge weights") {
  // Two growing discs; the inner tangent at tau = 0 under SpaceTime.
  const Scene s = testing_support::scene({disc(0, 0, 0, 1, {0.5}), disc(1, 10, 0, 1, {0.5})}, 1.0,
                                         50.0);
  const Preprocessed pre = preprocess(s);
  const AugmentedGraph aug = augment_query(pre, {0, -20}, {0, 20});
  for (int e = 0; e < static_cast<int>(pre.graph.edges.size()); ++e) {
    const auto& edge = pre.graph.edges[e];
    auto len = edge.solver.length(0.0);
    const double w = edge_weight(aug, e, 0.0);
    if (len) CHECK(w == *len);
    CHECK(std::isinf(edge_weight(aug, e, 60.0)));
  }

  // Collinear blocked edge.
  const Scene c = testing_support::scene({disc(0, 0, 0, 1), disc(1, 10, 0, 1), disc(2, 5, 0, 1)});
  const Preprocessed pc = preprocess(c);
  const AugmentedGraph ac = augment_query(pc, {0, -20}, {0, 20});
  for (const auto& e : pc.graph.edges)
    if (e.from == 0 && e.to == 1 && is_inner(e.kind)) CHECK(std::isinf(edge_weight(ac, e.id, 3.0)));
}

TEST_CASE("snapshot legs from growing discs cut their own disc") {
  const Scene s = testing_support::scene({disc(0, 0, 0, 1, {0.5}), disc(1, 10, 0, 1, {0.5})}, 1.0,
                                         50.0);
  PreprocessOptions opt;
  opt.graph.model = TangentModel::Snapshot;
  const Preprocessed pre = preprocess(s, opt);
  const AugmentedGraph aug = augment_query(pre, {0, -20}, {0, 20});
  for (const auto& e : pre.graph.edges)
    if (e.from == 0 && e.kind == TangentKind::InnerLeft) {
      CHECK(*e.solver.length(0.0) == doctest::Approx(8.0).epsilon(1e-12));
      QueryDiagnostics diag;
      CHECK(std::isinf(edge_weight(aug, e.id, 0.0, {}, &diag)));
      CHECK(diag.self_contact == 1);
    }
}

TEST_CASE("sealed destination is unreachable") {
  // Ring of growing discs around d that closes long before the robot arrives.
  std::vector<Disc> ring;
  const int m = 8;
  for (int k = 0; k < m; ++k) {
    const double a = kTwoPi * k / m;
    ring.push_back(disc(k, 3 * std::cos(a), 3 * std::sin(a), 1.0, {0.5}));
  }
  const Scene s = testing_support::scene(ring, 1.0, 60.0);
  REQUIRE(validate_scene(s).empty());
  const QueryResult r = query(preprocess(s), {30, 0}, {0, 0});
  CHECK(r.status != QueryStatus::Found);
  GridParams p = default_grid(s, {30, 0}, {0, 0});
  CHECK(!grid_plan(s, {30, 0}, {0, 0}, p).reached);
}

TEST_CASE("growing single disc") {
  const Scene s = testing_support::scene({disc(0, 0, 0, 1, {0.2})}, 1.0, 60.0);
  const Preprocessed pre = preprocess(s);
  const QueryResult r = query(pre, {-6, 0}, {6, 0});
  check_path_shape(r, s, {-6, 0}, {6, 0});
  // Lower bound: straight line; upper bound: the grid oracle plus slack.
  CHECK(r.arrival_time > 12.0);
  GridParams p = default_grid(s, {-6, 0}, {6, 0});
  p.dx = 0.05;
  const GridResult g = grid_plan(s, {-6, 0}, {6, 0}, p);
  REQUIRE(g.reached);
  CHECK(r.arrival_time <= g.arrival_time * 1.05);
  CHECK(r.arrival_time >= g.arrival_time * 0.95);
}

TEST_CASE("random scenes produce valid paths") {
  std::mt19937_64 rng(99);
  int found = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    RandomSceneOptions opt;
    opt.n = 3 + static_cast<int>(seed % 3);
    opt.beta = static_cast<int>(seed % 3);
    const Scene s = random_scene(opt, seed);
    const Preprocessed pre = preprocess(s);
    std::uniform_real_distribution<double> u(-12, 12);
    for (int q = 0; q < 3; ++q) {
      Vec2 a, b;
      do a = {u(rng), u(rng)}; while (first_hit(s, a).hit_time < 1.0);
      do b = {u(rng), u(rng)}; while (first_hit(s, b).hit_time < 1.0);
      const QueryResult r = query(pre, a, b);
      if (r.status != QueryStatus::Found) continue;
      ++found;
      INFO("seed ", seed, " query ", q);
      check_path_shape(r, s, a, b);
      CHECK(r.arrival_time >= distance(a, b) / s.v_max - 1e-9);
    }
  }
  CHECK(found > 5);
}

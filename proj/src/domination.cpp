#include "gdisc/domination.hpp"

#include <algorithm>

#include "gdisc/clearance.hpp"

namespace gdisc {

double hit_time(const Disc& disc, Vec2 x, double horizon) {
  return reach_time(disc, distance(x, disc.center()), horizon);
}

double reach_time(const Disc& disc, double d, double horizon) {
  if (disc.radius0() >= d) return 0.0;
  if (disc.is_linear()) {
    const double c = disc.velocity().coeffs[0];
    if (c <= 0.0) return std::numeric_limits<double>::infinity();
    const double t = (d - disc.radius0()) / c;
    return t <= horizon ? t : std::numeric_limits<double>::infinity();
  }
  // r is nondecreasing, so the first root of r(t) - d is the crossing.
  std::vector<double> c(disc.radius_poly().coeffs().begin(), disc.radius_poly().coeffs().end());
  c[0] -= d;
  const auto roots = real_roots_in(Polynomial(std::move(c)), 0.0, horizon, 1e-12);
  return roots.empty() ? std::numeric_limits<double>::infinity() : roots.front();
}

FirstHit first_hit(std::span<const Disc> discs, Vec2 x, double horizon) {
  FirstHit best;
  for (const Disc& d : discs) {
    const double t = hit_time(d, x, horizon);
    if (t < best.hit_time) best = {d.id(), t};
  }
  return best;
}

bool engulfed(std::span<const Disc> discs, Vec2 x, double t, std::span<const int> skip,
              double tol) {
  for (const Disc& d : discs) {
    if (std::find(skip.begin(), skip.end(), d.id()) != skip.end()) continue;
    if (-clearance(d, x, t) > tol) return true;
  }
  return false;
}

bool is_dominated(const AdjacencyGraph& graph, int edge, double tau) {
  const TangentEdge& e = graph.edges[edge];
  auto st = e.solver.solve(tau);
  if (!st) return false;
  const auto& discs = graph.scene.discs;
  const int skip[] = {discs[e.from].id(), discs[e.to].id()};
  return engulfed(discs, st->from, st->depart_time, skip) ||
         engulfed(discs, st->to, st->arrive_time, skip);
}

}  // namespace gdisc

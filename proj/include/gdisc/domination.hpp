#pragma once

#include <limits>
#include <span>

#include "gdisc/graph.hpp"
#include "gdisc/scene.hpp"

namespace gdisc {

/// First disc to cover a point, and when.
struct FirstHit {
  int disc_id = -1;  // -1: no disc reaches the point within the horizon
  double hit_time = std::numeric_limits<double>::infinity();
};

/// Smallest t in [0, horizon] with r(t) >= |x - o|; +inf if none.
double hit_time(const Disc& disc, Vec2 x, double horizon);
/// Smallest t in [0, horizon] with r(t) >= d; +inf if none.
double reach_time(const Disc& disc, double d, double horizon);

FirstHit first_hit(std::span<const Disc> discs, Vec2 x, double horizon);
inline FirstHit first_hit(const Scene& scene, Vec2 x) {
  return first_hit(scene.discs, x, scene.horizon);
}

/// True when x lies inside some disc of `discs` at time t by more than `tol`,
/// ignoring discs whose ids are in `skip`.
bool engulfed(std::span<const Disc> discs, Vec2 x, double t, std::span<const int> skip = {},
              double tol = 1e-9);

/// Departure point inside another disc at tau, or arrival point inside
/// another disc at the arrival time.
bool is_dominated(const AdjacencyGraph& graph, int edge, double tau);

}  // namespace gdisc

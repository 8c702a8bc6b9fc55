#pragma once

#include <optional>
#include <vector>

#include "gdisc/graph.hpp"

namespace gdisc {

struct ArrangementOptions {
  int grid = 2048;          // shared per-disc sample grid over [0, horizon]
  int min_samples = 512;    // lower bound on samples per overlapping domain
  double root_tol = 1e-12;  // bisection width for crossings
  double touch_tol = 1e-9;  // |angle difference| accepted as a touching root
  double batch_tol = 1e-9;  // events closer than this are processed together
};

/// A root of theta_a(t) - theta_b(t) = 0 (mod 2pi).
struct PairRoot {
  double time = 0.0;
  bool touching = false;  // the curves meet without crossing
};

/// One event on the departure curve of `edge`, shared with `other`.
struct IntersectionEvent {
  double time = 0.0;
  int edge = -1;
  int other = -1;
  Vec2 position;
  bool touching = false;
};

struct IntersectionSequence {
  int edge = -1;
  std::vector<IntersectionEvent> events;  // ascending time
};

struct SweepStats {
  long events = 0;        // intersection points found by the sweep
  long touching = 0;      // of which the curves touch without crossing
  long pair_solves = 0;   // curve pairs whose roots were computed
  long late_roots = 0;    // roots discovered after their time (order inconsistency)
  long reorders = 0;      // batches whose order had to be repaired by sorting
};

/// Departure-curve angles of one disc, sampled on a shared grid.
class CurveCache {
 public:
  CurveCache(const AdjacencyGraph& graph, int disc, const ArrangementOptions& options);
  /// Angle of edge `edge` at grid index k (edge must depart this disc).
  std::optional<double> at(int edge, int k) const;
  double grid_time(int k) const;
  int grid_size() const { return options_.grid; }

 private:
  const AdjacencyGraph& graph_;
  ArrangementOptions options_;
  std::vector<int> slot_;  // edge id -> row, -1 if not departing here
  std::vector<std::vector<double>> rows_;
};

/// Roots of two departure curves of the same disc over their common domain.
/// `cache` may be null.
std::vector<PairRoot> curve_intersections(const AdjacencyGraph& graph, int edge_a, int edge_b,
                                          const ArrangementOptions& options = {},
                                          const CurveCache* cache = nullptr);
/// Same, restricted to one domain piece of each curve.
std::vector<PairRoot> piece_intersections(const AdjacencyGraph& graph, int edge_a, int piece_a,
                                          int edge_b, int piece_b,
                                          const ArrangementOptions& options,
                                          const CurveCache* cache);

/// Circular sweep over the departure curves of disc `disc` (index). Returns one
/// sequence per departing edge, in edge order.
std::vector<IntersectionSequence> sweep_disc(const AdjacencyGraph& graph, int disc,
                                             const ArrangementOptions& options = {},
                                             SweepStats* stats = nullptr);

struct IntersectionSet {
  std::vector<IntersectionSequence> sequences;  // indexed by edge id
  long k = 0;                                   // number of intersection points
  SweepStats stats;
};

IntersectionSet build_intersection_set(const AdjacencyGraph& graph,
                                       const ArrangementOptions& options = {});

}  // namespace gdisc

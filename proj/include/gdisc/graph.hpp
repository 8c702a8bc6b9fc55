#pragma once

#include <vector>

#include "gdisc/kinematics.hpp"
#include "gdisc/scene.hpp"

namespace gdisc {

/// Directed tangent edge between two discs. Its two Steiner vertices are
/// departure(id) on the source disc and arrival(id) on the target disc.
struct TangentEdge {
  int id = -1;
  int from = -1;  // disc index in the owning disc list
  int to = -1;
  TangentKind kind = TangentKind::InnerLeft;
  TangentSolver solver;
  std::vector<Interval> domain;

  bool in_domain(double tau) const;
  /// Domain piece containing tau, -1 if none.
  int piece_of(double tau) const;
};

/// Adjacency graph over the scene discs: 4 tangent edges per ordered pair.
/// Spiral connectivity is generated lazily by the query.
struct AdjacencyGraph {
  Scene scene;
  MotionLimits limits;
  std::vector<TangentEdge> edges;
  std::vector<std::vector<int>> departing;  // per disc index, ascending edge ids
  std::vector<std::vector<int>> arriving;

  int disc_count() const { return scene.size(); }
  int vertex_count() const { return 2 * static_cast<int>(edges.size()); }
  static int departure_vertex(int edge) { return 2 * edge; }
  static int arrival_vertex(int edge) { return 2 * edge + 1; }
};

struct GraphOptions {
  TangentModel model = TangentModel::SpaceTime;
  int domain_samples = 1024;
};

AdjacencyGraph build_graph(const Scene& scene, const GraphOptions& options = {});

/// Edge with a precomputed domain; `from`/`to` index into `discs`.
TangentEdge make_edge(int id, const std::vector<Disc>& discs, int from, int to, TangentKind kind,
                      const MotionLimits& limits, int domain_samples = 1024);

}  // namespace gdisc

#include "gdisc/graph.hpp"

namespace gdisc {

bool TangentEdge::in_domain(double tau) const { return piece_of(tau) >= 0; }

int TangentEdge::piece_of(double tau) const {
  for (std::size_t k = 0; k < domain.size(); ++k)
    if (domain[k].contains(tau)) return static_cast<int>(k);
  return -1;
}

TangentEdge make_edge(int id, const std::vector<Disc>& discs, int from, int to, TangentKind kind,
                      const MotionLimits& limits, int domain_samples) {
  TangentEdge e{id, from, to, kind, TangentSolver(discs[from], discs[to], kind, limits), {}};
  e.domain = tangent_domain(e.solver, domain_samples);
  return e;
}

AdjacencyGraph build_graph(const Scene& scene, const GraphOptions& options) {
  AdjacencyGraph g;
  g.scene = scene;
  g.limits = {scene.v_max, scene.horizon, options.model};
  const int n = scene.size();
  g.departing.assign(n, {});
  g.arriving.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (TangentKind k : kAllKinds) {
        const int id = static_cast<int>(g.edges.size());
        g.edges.push_back(make_edge(id, scene.discs, i, j, k, g.limits, options.domain_samples));
        g.departing[i].push_back(id);
        g.arriving[j].push_back(id);
      }
    }
  }
  return g;
}

}  // namespace gdisc

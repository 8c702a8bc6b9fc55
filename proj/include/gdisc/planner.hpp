#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gdisc/arrangement.hpp"
#include "gdisc/blockedset.hpp"
#include "gdisc/graph.hpp"
#include "gdisc/kinematics.hpp"

namespace gdisc {

/// Everything a query needs that depends only on the scene.
struct Preprocessed {
  AdjacencyGraph graph;
  IntersectionSet intersections;
  BlockedSet blocked;
};

struct PreprocessOptions {
  GraphOptions graph;
  ArrangementOptions arrangement;
  BlockedOptions blocked;
};

Preprocessed preprocess(const Scene& scene, const PreprocessOptions& options = {});

/// Thrown when s or d is covered by a disc at t = 0.
class EndpointError : public std::runtime_error {
 public:
  EndpointError(std::string which, int disc_id);
  const std::string& which() const { return which_; }  // "source" or "destination"
  int disc_id() const { return disc_id_; }

 private:
  std::string which_;
  int disc_id_;
};

/// The adjacency graph plus the query points as zero-radius discs and their
/// point-to-disc tangents. Query edges are validated by direct geometry.
struct AugmentedGraph {
  const Preprocessed* base = nullptr;
  Vec2 source;
  Vec2 target;
  int source_id = -1;
  int target_id = -2;
  std::vector<Disc> discs;          // scene discs, then source, then target
  std::vector<TangentEdge> extra;   // query edges; ids continue after the base edges
  std::vector<std::vector<int>> departing;  // per disc index (incl. query discs), all edge ids

  int edge_count() const;
  const TangentEdge& edge(int id) const;
  bool is_query_edge(int id) const;
  int source_index() const { return static_cast<int>(discs.size()) - 2; }
  int target_index() const { return static_cast<int>(discs.size()) - 1; }
};

AugmentedGraph augment_query(const Preprocessed& pre, Vec2 source, Vec2 target);

enum class QueryStatus { Found, Unreachable, HorizonExceeded };
std::string_view to_string(QueryStatus s);

struct QueryOptions {
  SpiralOptions spiral{0.05, 0.02, 1.0, 1e-10};
  int spiral_samples = 128;    // clearance samples per spiral leg
  int leg_samples = 200;       // clearance samples for directly checked tangents
  int max_labels_per_vertex = 8;
  bool use_blocked_set = true;  // false: check preprocessed edges directly too
};

struct QueryDiagnostics {
  long settled = 0;
  long relaxations = 0;
  long out_of_domain = 0;
  long blocked = 0;
  long dominated = 0;
  long self_contact = 0;
  long spiral_runs = 0;
  long spiral_meets = 0;
  long spiral_blocked = 0;
  long horizon_limited = 0;
  long fifo_violations = 0;
  double min_clearance = 1e300;  // of the returned path against non-supporting discs
  bool grazing = false;
};

struct QueryResult {
  QueryStatus status = QueryStatus::Unreachable;
  RobotPath path;
  double arrival_time = 0.0;
  QueryDiagnostics diagnostics;
};

/// Validity-aware weight of a tangent edge at departure time tau: the leg
/// length, or +inf when the leg is out of domain, blocked, dominated, or cuts
/// its own discs.
double edge_weight(const AugmentedGraph& graph, int edge, double tau,
                   const QueryOptions& options = {}, QueryDiagnostics* diag = nullptr);

QueryResult query(const Preprocessed& pre, Vec2 source, Vec2 target,
                  const QueryOptions& options = {});

}  // namespace gdisc

#pragma once

#include <vector>

#include "gdisc/arrangement.hpp"
#include "gdisc/graph.hpp"

namespace gdisc {

/// What produced an interval endpoint.
enum class Breakpoint {
  Domain,     // start or end of a domain piece
  Alignment,  // an aligned shorter tangent toward a third disc (an L_e event)
  Contact,    // a third disc's boundary passes over a leg endpoint
};
std::string_view to_string(Breakpoint b);
Breakpoint parse_breakpoint(std::string_view s);

/// Maximal blocked interval of departure times, closed.
struct BlockedInterval {
  double lo = 0.0;
  double hi = 0.0;
  Breakpoint lo_kind = Breakpoint::Domain;
  Breakpoint hi_kind = Breakpoint::Domain;
};

struct BlockedSequence {
  int edge = -1;
  std::vector<BlockedInterval> intervals;  // sorted, disjoint
};

struct BlockedStats {
  long alignment_events = 0;   // L_e events that passed the aligned-shorter test
  long contact_events = 0;
  long toggle_mismatches = 0;  // toggles contradicted by the direct check
  long intervals = 0;
};

struct BlockedSet {
  std::vector<BlockedSequence> sequences;  // indexed by edge id
  BlockedStats stats;
};

struct BlockedOptions {
  int contact_samples = 512;    // per domain piece, for endpoint contacts
  int clearance_samples = 200;  // direct status checks
  double align_tol = 1e-8;      // heading difference accepted as aligned
};

BlockedSet blocked_set(const AdjacencyGraph& graph, const IntersectionSet& intersections,
                       const BlockedOptions& options = {});

/// Binary search over the sequence; closed intervals.
bool is_blocked(const BlockedSequence& sequence, double tau);

/// Direct geometric check: minimum signed clearance of the leg R(e, tau)
/// against every disc other than the edge's own two. +inf when no leg exists.
double third_disc_clearance(const AdjacencyGraph& graph, int edge, double tau,
                            int samples = 200);

}  // namespace gdisc

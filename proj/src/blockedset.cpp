#include "gdisc/blockedset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gdisc/clearance.hpp"

namespace gdisc {

std::string_view to_string(Breakpoint b) {
  switch (b) {
    case Breakpoint::Domain: return "domain";
    case Breakpoint::Alignment: return "alignment";
    case Breakpoint::Contact: return "contact";
  }
  return "?";
}

Breakpoint parse_breakpoint(std::string_view s) {
  for (Breakpoint b : {Breakpoint::Domain, Breakpoint::Alignment, Breakpoint::Contact})
    if (to_string(b) == s) return b;
  throw std::invalid_argument("unknown breakpoint kind: " + std::string(s));
}

bool is_blocked(const BlockedSequence& sequence, double tau) {
  const auto& iv = sequence.intervals;
  auto it = std::upper_bound(iv.begin(), iv.end(), tau,
                             [](double t, const BlockedInterval& b) { return t < b.lo; });
  if (it == iv.begin()) return false;
  return tau <= std::prev(it)->hi;
}

double third_disc_clearance(const AdjacencyGraph& graph, int edge, double tau, int samples) {
  const TangentEdge& e = graph.edges[edge];
  auto st = e.solver.solve(tau);
  if (!st) return std::numeric_limits<double>::infinity();
  const LegTrack track(tangent_leg(*st), nullptr, graph.limits.v_max);
  const auto& discs = graph.scene.discs;
  const int skip[] = {discs[e.from].id(), discs[e.to].id()};
  ClearanceOptions opt;
  opt.samples = samples;
  return leg_clearance(track, discs, skip, opt).value;
}

namespace {

struct Event {
  double time;
  int disc;  // third disc index
  Breakpoint kind;
  bool flips;
};

class EdgeScan {
 public:
  EdgeScan(const AdjacencyGraph& g, const TangentEdge& e, const IntersectionSequence& le,
           const BlockedOptions& opt, BlockedStats& stats)
      : g_(g), e_(e), le_(le), opt_(opt), stats_(stats) {}

  void run(const Interval& piece, std::vector<BlockedInterval>& out) {
    std::vector<Event> events;
    alignment_events(piece, events);
    contact_events(piece, events);
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
      return std::tie(a.time, a.disc) < std::tie(b.time, b.disc);
    });

    const int n = g_.disc_count();
    // Time of the next event of the same disc, for placing status checks.
    std::vector<double> next_of(events.size(), piece.hi);
    std::vector<double> last_seen(n, piece.hi);
    for (int k = static_cast<int>(events.size()) - 1; k >= 0; --k) {
      next_of[k] = last_seen[events[k].disc];
      last_seen[events[k].disc] = events[k].time;
    }

    std::vector<char> in(n, 0);
    int count = 0;
    for (int u = 0; u < n; ++u) {
      if (u == e_.from || u == e_.to) continue;
      in[u] = intersects(u, 0.5 * (piece.lo + last_seen[u]));
      count += in[u];
    }

    BlockedInterval open{piece.lo, piece.lo, Breakpoint::Domain, Breakpoint::Domain};
    bool is_open = count > 0;
    for (std::size_t k = 0; k < events.size(); ++k) {
      const Event& ev = events[k];
      const bool expected = ev.flips ? !in[ev.disc] : in[ev.disc];
      const bool observed = intersects(ev.disc, 0.5 * (ev.time + next_of[k]));
      if (observed != expected) ++stats_.toggle_mismatches;
      count += static_cast<int>(observed) - static_cast<int>(in[ev.disc]);
      in[ev.disc] = observed;
      if (!is_open && count > 0) {
        open = {ev.time, ev.time, ev.kind, ev.kind};
        is_open = true;
      } else if (is_open && count == 0) {
        open.hi = ev.time;
        open.hi_kind = ev.kind;
        out.push_back(open);
        is_open = false;
      }
    }
    if (is_open) {
      open.hi = piece.hi;
      open.hi_kind = Breakpoint::Domain;
      out.push_back(open);
    }
  }

 private:
  bool intersects(int u, double tau) const {
    auto st = e_.solver.solve(tau);
    if (!st) return false;
    const LegTrack track(tangent_leg(*st), nullptr, g_.limits.v_max);
    ClearanceOptions opt;
    opt.samples = opt_.clearance_samples;
    return leg_clearance(track, g_.scene.discs[u], opt).value < 0.0;
  }

  void alignment_events(const Interval& piece, std::vector<Event>& out) {
    for (const IntersectionEvent& ev : le_.events) {
      if (ev.time < piece.lo || ev.time > piece.hi) continue;
      const TangentEdge& other = g_.edges[ev.other];
      if (other.to == e_.to || other.to == e_.from) continue;
      if (side_of(other.kind) != side_of(e_.kind)) continue;
      auto a = e_.solver.solve(ev.time);
      auto b = other.solver.solve(ev.time);
      if (!a || !b) continue;
      if (std::abs(wrap_angle(a->heading - b->heading)) > opt_.align_tol) continue;
      if (!(b->length < a->length)) continue;
      out.push_back({ev.time, other.to, Breakpoint::Alignment, !ev.touching});
      ++stats_.alignment_events;
    }
  }

  // Signed clearance of the two leg endpoints against disc u.
  std::pair<double, double> endpoint_clearance(const TangentState& st, int u) const {
    const Disc& d = g_.scene.discs[u];
    return {clearance(d, st.from, st.depart_time), clearance(d, st.to, st.arrive_time)};
  }

  void contact_events(const Interval& piece, std::vector<Event>& out) {
    const int n = g_.disc_count();
    const int m = opt_.contact_samples;
    std::vector<double> ts;
    std::vector<TangentState> states;
    for (int k = 0; k <= m; ++k) {
      const double t = k == m ? piece.hi : piece.lo + (piece.hi - piece.lo) * k / m;
      if (auto st = e_.solver.solve(t)) {
        ts.push_back(t);
        states.push_back(*st);
      }
    }
    for (int u = 0; u < n; ++u) {
      if (u == e_.from || u == e_.to) continue;
      for (int end = 0; end < 2; ++end) {
        auto value = [&](const TangentState& st) {
          auto [p, q] = endpoint_clearance(st, u);
          return end == 0 ? p : q;
        };
        for (std::size_t k = 0; k + 1 < states.size(); ++k) {
          const double v0 = value(states[k]), v1 = value(states[k + 1]);
          if ((v0 < 0.0) == (v1 < 0.0)) continue;
          double a = ts[k], b = ts[k + 1];
          const bool neg_a = v0 < 0.0;
          while (b - a > 1e-12) {
            const double mid = 0.5 * (a + b);
            auto st = e_.solver.solve(mid);
            if (st && ((value(*st) < 0.0) == neg_a)) a = mid; else b = mid;
          }
          out.push_back({0.5 * (a + b), u, Breakpoint::Contact, true});
          ++stats_.contact_events;
        }
      }
    }
  }

  const AdjacencyGraph& g_;
  const TangentEdge& e_;
  const IntersectionSequence& le_;
  const BlockedOptions& opt_;
  BlockedStats& stats_;
};

}  // namespace

BlockedSet blocked_set(const AdjacencyGraph& graph, const IntersectionSet& intersections,
                       const BlockedOptions& options) {
  BlockedSet set;
  set.sequences.resize(graph.edges.size());
  for (const TangentEdge& e : graph.edges) {
    BlockedSequence& seq = set.sequences[e.id];
    seq.edge = e.id;
    if (graph.disc_count() < 3) continue;
    EdgeScan scan(graph, e, intersections.sequences[e.id], options, set.stats);
    for (const Interval& piece : e.domain) scan.run(piece, seq.intervals);
    set.stats.intervals += static_cast<long>(seq.intervals.size());
  }
  return set;
}

}  // namespace gdisc

#include "gdisc/planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "gdisc/clearance.hpp"
#include "gdisc/domination.hpp"

namespace gdisc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Preprocessed preprocess(const Scene& scene, const PreprocessOptions& options) {
  Preprocessed pre;
  pre.graph = build_graph(scene, options.graph);
  pre.intersections = build_intersection_set(pre.graph, options.arrangement);
  pre.blocked = blocked_set(pre.graph, pre.intersections, options.blocked);
  return pre;
}

EndpointError::EndpointError(std::string which, int disc_id)
    : std::runtime_error(which + " lies inside disc " + std::to_string(disc_id) + " at t=0"),
      which_(std::move(which)),
      disc_id_(disc_id) {}

int AugmentedGraph::edge_count() const {
  return static_cast<int>(base->graph.edges.size() + extra.size());
}

const TangentEdge& AugmentedGraph::edge(int id) const {
  const int n = static_cast<int>(base->graph.edges.size());
  return id < n ? base->graph.edges[id] : extra[id - n];
}

bool AugmentedGraph::is_query_edge(int id) const {
  return id >= static_cast<int>(base->graph.edges.size());
}

AugmentedGraph augment_query(const Preprocessed& pre, Vec2 source, Vec2 target) {
  const Scene& scene = pre.graph.scene;
  for (auto [which, x] : {std::pair{"source", source}, std::pair{"destination", target}}) {
    const FirstHit hit = first_hit(scene, x);
    if (hit.hit_time <= 0.0) throw EndpointError(which, hit.disc_id);
  }

  AugmentedGraph g;
  g.base = &pre;
  g.source = source;
  g.target = target;
  int lowest = 0;
  for (const Disc& d : scene.discs) lowest = std::min(lowest, d.id());
  g.source_id = lowest - 1;
  g.target_id = lowest - 2;
  g.discs = scene.discs;
  g.discs.emplace_back(g.source_id, source, 0.0, VelocityPoly{});
  g.discs.emplace_back(g.target_id, target, 0.0, VelocityPoly{});

  const int n = scene.size();
  const int s = n, d = n + 1;
  g.departing.assign(n + 2, {});
  for (int i = 0; i < n; ++i) g.departing[i] = pre.graph.departing[i];

  int next_id = static_cast<int>(pre.graph.edges.size());
  auto add = [&](int from, int to, TangentKind kind) {
    g.extra.push_back(make_edge(next_id, g.discs, from, to, kind, pre.graph.limits, 64));
    g.departing[from].push_back(next_id++);
  };
  // A zero-radius endpoint leaves only the two sides as distinct tangents.
  for (int j = 0; j < n; ++j) {
    add(s, j, TangentKind::OuterLeft);
    add(s, j, TangentKind::OuterRight);
  }
  for (int i = 0; i < n; ++i) {
    add(i, d, TangentKind::OuterLeft);
    add(i, d, TangentKind::OuterRight);
  }
  add(s, d, TangentKind::OuterLeft);
  return g;
}

std::string_view to_string(QueryStatus s) {
  switch (s) {
    case QueryStatus::Found: return "found";
    case QueryStatus::Unreachable: return "unreachable";
    case QueryStatus::HorizonExceeded: return "horizon-exceeded";
  }
  return "?";
}

namespace {

bool needs_self_check(const Disc& d, TangentModel model) {
  if (d.is_static()) return false;
  return model == TangentModel::Snapshot || !d.is_linear();
}

double weigh(const AugmentedGraph& g, int id, double tau, const QueryOptions& opt,
             QueryDiagnostics& diag, TangentState* out) {
  const TangentEdge& e = g.edge(id);
  auto st = e.solver.solve(tau);
  if (!st) {
    ++diag.out_of_domain;
    return kInf;
  }
  const auto& scene_discs = g.base->graph.scene.discs;
  const std::span<const Disc> discs(scene_discs);
  const int skip[] = {g.discs[e.from].id(), g.discs[e.to].id()};

  std::optional<LegTrack> track;
  auto get_track = [&]() -> const LegTrack& {
    if (!track) track.emplace(tangent_leg(*st), nullptr, g.base->graph.limits.v_max);
    return *track;
  };

  if (engulfed(discs, st->from, st->depart_time, skip) ||
      engulfed(discs, st->to, st->arrive_time, skip)) {
    ++diag.dominated;
    return kInf;
  }
  bool blocked = false;
  if (!g.is_query_edge(id) && opt.use_blocked_set) {
    blocked = is_blocked(g.base->blocked.sequences[id], tau);
  } else {
    ClearanceOptions co;
    co.samples = opt.leg_samples;
    co.stop_when_negative = true;
    co.exact_below = 1e-3;
    blocked = leg_clearance(get_track(), discs, skip, co).value < 0.0;
  }
  if (blocked) {
    ++diag.blocked;
    return kInf;
  }
  const TangentModel model = g.base->graph.limits.model;
  for (int own : {e.from, e.to}) {
    if (own >= static_cast<int>(scene_discs.size())) continue;
    if (!needs_self_check(scene_discs[own], model)) continue;
    ClearanceOptions co;
    co.samples = opt.leg_samples;
    if (leg_clearance(get_track(), scene_discs[own], co).value < -1e-9) {
      ++diag.self_contact;
      return kInf;
    }
  }
  if (out) *out = *st;
  return st->length;
}

}  // namespace

double edge_weight(const AugmentedGraph& graph, int edge, double tau, const QueryOptions& options,
                   QueryDiagnostics* diag) {
  QueryDiagnostics local;
  if (!(tau >= 0.0 && tau <= graph.base->graph.limits.horizon)) return kInf;
  return weigh(graph, edge, tau, options, diag ? *diag : local, nullptr);
}

namespace {

struct Label {
  int vertex;
  double time;
  int pred;
  std::optional<Leg> leg;
  std::array<int, 2> support{-1, -1};  // disc indices the leg touches
};

class Search {
 public:
  Search(const AugmentedGraph& g, const QueryOptions& opt)
      : g_(g), opt_(opt), limits_(g.base->graph.limits) {
    const int edges = g.edge_count();
    source_ = 2 * edges;
    target_ = 2 * edges + 1;
    settled_count_.assign(2 * edges + 2, 0);
    done_.assign(2 * edges + 2, 0);
  }

  QueryResult run() {
    QueryResult result;
    push(source_, 0.0, -1, std::nullopt, {-1, -1});
    while (!queue_.empty()) {
      auto [time, vertex, id] = queue_.top();
      queue_.pop();
      if (done_[vertex] || settled_count_[vertex] >= opt_.max_labels_per_vertex) continue;
      ++settled_count_[vertex];
      ++diag_.settled;
      if (vertex == target_) {
        finish(id, result);
        return result;
      }
      settle(id);
    }
    result.status = diag_.horizon_limited > 0 ? QueryStatus::HorizonExceeded
                                              : QueryStatus::Unreachable;
    result.diagnostics = diag_;
    return result;
  }

 private:
  int departure(int e) const { return 2 * e; }
  int arrival(int e) const {
    return g_.edge(e).to == g_.target_index() ? target_ : 2 * e + 1;
  }

  void push(int vertex, double time, int pred, std::optional<Leg> leg, std::array<int, 2> sup) {
    const int id = static_cast<int>(labels_.size());
    labels_.push_back({vertex, time, pred, std::move(leg), sup});
    queue_.push({time, vertex, id});
  }

  void relax_tangent(int e, int label_id) {
    const double t = labels_[label_id].time;
    ++diag_.relaxations;
    TangentState st;
    const double w = weigh(g_, e, t, opt_, diag_, &st);
    if (w == kInf) return;
    // Non-overtaking spot check.
    if (auto later = g_.edge(e).solver.solve(t + 1e-6))
      if (later->arrive_time < st.arrive_time - 1e-12) ++diag_.fifo_violations;
    const TangentEdge& edge = g_.edge(e);
    const int vertex = departure(e);
    if (vertex != source_) done_[vertex] = 1;  // later labels here cannot do better
    push(arrival(e), st.arrive_time, label_id, tangent_leg(st), {edge.from, edge.to});
  }

  void settle(int id) {
    const int vertex = labels_[id].vertex;
    if (vertex == source_) {
      done_[vertex] = 1;
      for (int e : g_.departing[g_.source_index()]) relax_tangent(e, id);
      return;
    }
    if (vertex % 2 == 0) {
      relax_tangent(vertex / 2, id);
      return;
    }
    done_[vertex] = 1;
    spirals(vertex / 2, id);
  }

  void spirals(int e, int label_id) {
    const Label& lab = labels_[label_id];
    const double t = lab.time;
    const int disc_index = g_.edge(e).to;
    const Disc& disc = g_.discs[disc_index];
    const double start_angle = angle_of(lab.leg->to - disc.center());

    const auto& out = g_.departing[disc_index];
    std::vector<const TangentSolver*> targets;
    targets.reserve(out.size());
    for (int f : out) targets.push_back(&g_.edge(f).solver);

    const auto& scene_discs = g_.base->graph.scene.discs;
    const int skip[] = {disc.id()};
    for (Turn turn : {Turn::Ccw, Turn::Cw}) {
      ++diag_.spiral_runs;
      const SpiralRun run =
          race_spiral(disc, start_angle, turn, t, targets, limits_, opt_.spiral);
      if (run.stop_reason == "horizon") ++diag_.horizon_limited;
      double prev_t = t, prev_angle = start_angle;
      for (const SpiralMeet& m : run.meets) {
        // Validate the boundary motion piecewise; once blocked, stop.
        if (m.time > prev_t) {
          const Leg piece = spiral_leg(disc, prev_angle, turn, prev_t, m.time, m.angle);
          const LegTrack track(piece, &disc, limits_.v_max, opt_.spiral.max_step);
          ClearanceOptions co;
          co.samples = opt_.spiral_samples;
          co.stop_when_negative = true;
          if (leg_clearance(track, scene_discs, skip, co).value < 0.0) {
            ++diag_.spiral_blocked;
            break;
          }
        }
        prev_t = m.time;
        prev_angle = m.angle;
        ++diag_.spiral_meets;
        const int f = out[m.target];
        const int v = departure(f);
        if (done_[v]) continue;
        push(v, m.time, label_id, spiral_leg(disc, start_angle, turn, t, m.time, m.angle),
             {disc_index, disc_index});
      }
    }
  }

  void finish(int id, QueryResult& result) {
    std::vector<int> chain;
    for (int k = id; k >= 0; k = labels_[k].pred) chain.push_back(k);
    std::reverse(chain.begin(), chain.end());
    const auto& scene_discs = g_.base->graph.scene.discs;
    for (int k : chain) {
      const Label& lab = labels_[k];
      if (!lab.leg || lab.leg->duration() <= 0.0) continue;
      result.path.legs.push_back(*lab.leg);
      // Clearance against discs the leg does not ride on.
      const Disc* ride = lab.leg->kind == LegKind::Spiral ? &g_.discs[lab.support[0]] : nullptr;
      const LegTrack track(*lab.leg, ride, limits_.v_max, opt_.spiral.max_step);
      std::vector<int> skip;
      for (int s : lab.support)
        if (s >= 0 && s < static_cast<int>(scene_discs.size())) skip.push_back(scene_discs[s].id());
      ClearanceOptions co;
      co.samples = opt_.leg_samples;
      const double c = leg_clearance(track, scene_discs, skip, co).value;
      diag_.min_clearance = std::min(diag_.min_clearance, c);
    }
    diag_.grazing = diag_.min_clearance < 0.0 && diag_.min_clearance >= -1e-6;
    result.status = QueryStatus::Found;
    result.arrival_time = labels_[id].time;
    result.diagnostics = diag_;
  }

  const AugmentedGraph& g_;
  const QueryOptions& opt_;
  MotionLimits limits_;
  int source_ = 0;
  int target_ = 0;
  std::vector<Label> labels_;
  std::vector<int> settled_count_;
  std::vector<char> done_;
  QueryDiagnostics diag_;
  using Entry = std::tuple<double, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue_;
};

}  // namespace

QueryResult query(const Preprocessed& pre, Vec2 source, Vec2 target,
                  const QueryOptions& options) {
  const AugmentedGraph g = augment_query(pre, source, target);
  if (source == target) {
    QueryResult r;
    r.status = QueryStatus::Found;
    return r;
  }
  Search search(g, options);
  return search.run();
}

}  // namespace gdisc

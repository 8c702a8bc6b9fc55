#include "gdisc/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <tuple>

namespace gdisc {

CurveCache::CurveCache(const AdjacencyGraph& graph, int disc, const ArrangementOptions& options)
    : graph_(graph), options_(options), slot_(graph.edges.size(), -1) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int e : graph.departing[disc]) {
    slot_[e] = static_cast<int>(rows_.size());
    std::vector<double> row(options_.grid + 1, nan);
    const TangentEdge& edge = graph.edges[e];
    for (int k = 0; k <= options_.grid; ++k) {
      const double t = grid_time(k);
      if (!edge.in_domain(t)) continue;
      if (auto a = edge.solver.depart_angle(t)) row[k] = *a;
    }
    rows_.push_back(std::move(row));
  }
}

double CurveCache::grid_time(int k) const {
  return graph_.limits.horizon * k / options_.grid;
}

std::optional<double> CurveCache::at(int edge, int k) const {
  const int s = slot_[edge];
  if (s < 0) return std::nullopt;
  const double v = rows_[s][k];
  if (std::isnan(v)) return std::nullopt;
  return v;
}

namespace {

constexpr double kGolden = 0.6180339887498949;

struct Lifted {
  double t;
  double raw;  // wrap(theta_a - theta_b)
  double d;    // continuous lift
};

}  // namespace

std::vector<PairRoot> piece_intersections(const AdjacencyGraph& graph, int edge_a, int piece_a,
                                          int edge_b, int piece_b,
                                          const ArrangementOptions& options,
                                          const CurveCache* cache) {
  const TangentEdge& A = graph.edges[edge_a];
  const TangentEdge& B = graph.edges[edge_b];
  const double lo = std::max(A.domain[piece_a].lo, B.domain[piece_b].lo);
  const double hi = std::min(A.domain[piece_a].hi, B.domain[piece_b].hi);
  std::vector<PairRoot> roots;
  if (!(hi > lo)) return roots;

  auto raw_at = [&](double t) -> std::optional<double> {
    auto a = A.solver.depart_angle(t);
    auto b = B.solver.depart_angle(t);
    if (!a || !b) return std::nullopt;
    return wrap_angle(*a - *b);
  };

  std::vector<Lifted> s;
  auto push = [&](double t, std::optional<double> raw) {
    if (!raw) return;
    const double d = s.empty() ? *raw : s.back().d + wrap_angle(*raw - s.back().raw);
    s.push_back({t, *raw, d});
  };

  const double h = graph.limits.horizon;
  const int g = options.grid;
  const int k_lo = static_cast<int>(std::floor(lo / h * g)) + 1;
  const int k_hi = static_cast<int>(std::ceil(hi / h * g)) - 1;
  if (cache && k_hi - k_lo + 1 >= options.min_samples) {
    push(lo, raw_at(lo));
    for (int k = k_lo; k <= k_hi; ++k) {
      const double t = cache->grid_time(k);
      if (t <= lo || t >= hi) continue;
      auto a = cache->at(edge_a, k);
      auto b = cache->at(edge_b, k);
      if (a && b) push(t, wrap_angle(*a - *b));
    }
    push(hi, raw_at(hi));
  } else {
    const int n = options.min_samples;
    for (int k = 0; k <= n; ++k) {
      const double t = k == n ? hi : lo + (hi - lo) * k / n;
      push(t, raw_at(t));
    }
  }
  if (s.size() < 2) return roots;

  // Lifted difference near sample `base`, evaluated fresh at t.
  auto lifted = [&](const Lifted& base, double t) -> std::optional<double> {
    auto r = raw_at(t);
    if (!r) return std::nullopt;
    return base.d + wrap_angle(*r - base.raw);
  };
  auto bisect = [&](const Lifted& base, double a, double b, double level) {
    const bool above = base.d >= level;
    // Invariant: side at a equals `above`, side at b differs.
    while (b - a > options.root_tol) {
      const double m = 0.5 * (a + b);
      auto v = lifted(base, m);
      if (v && ((*v >= level) == above)) a = m; else b = m;
    }
    return 0.5 * (a + b);
  };

  auto cell = [](double d) { return std::floor(d / kTwoPi); };
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const double c0 = cell(s[k].d), c1 = cell(s[k + 1].d);
    if (c0 == c1) continue;
    // Each level between the samples is crossed (normally exactly one).
    const double step = c1 > c0 ? 1.0 : -1.0;
    for (double m = c0; m != c1; m += step) {
      const double level = kTwoPi * (step > 0 ? m + 1.0 : m);
      roots.push_back({bisect(s[k], s[k].t, s[k + 1].t, level), false});
    }
  }

  // Near-tangencies: a sampled local minimum of the distance to the nearest
  // level, with no crossing on either side.
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double c = cell(s[k].d);
    if (cell(s[k - 1].d) != c || cell(s[k + 1].d) != c) continue;
    const double level = kTwoPi * std::round(s[k].d / kTwoPi);
    const double sigma = s[k].d >= level ? 1.0 : -1.0;
    const double vk = sigma * (s[k].d - level);
    if (vk > 0.05) continue;
    const double vl = sigma * (s[k - 1].d - level), vr = sigma * (s[k + 1].d - level);
    if (vk > vl || vk > vr || (vk == vl && vk == vr)) continue;

    auto f = [&](double t) {
      auto v = lifted(s[k], t);
      return v ? sigma * (*v - level) : 1e300;
    };
    double a = s[k - 1].t, b = s[k + 1].t;
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
      if (f1 < f2) {
        b = x2; x2 = x1; f2 = f1;
        x1 = b - kGolden * (b - a); f1 = f(x1);
      } else {
        a = x1; x1 = x2; f1 = f2;
        x2 = a + kGolden * (b - a); f2 = f(x2);
      }
    }
    const double tm = f1 < f2 ? x1 : x2;
    const double vm = std::min(f1, f2);
    if (vm < 0.0) {
      Lifted mid{tm, *raw_at(tm), 0.0};
      mid.d = *lifted(s[k], tm);
      roots.push_back({bisect(s[k - 1], s[k - 1].t, tm, level), false});
      roots.push_back({bisect(mid, tm, s[k + 1].t, level), false});
    } else if (vm <= options.touch_tol) {
      roots.push_back({tm, true});
    }
  }

  std::sort(roots.begin(), roots.end(),
            [](const PairRoot& x, const PairRoot& y) { return x.time < y.time; });
  return roots;
}

std::vector<PairRoot> curve_intersections(const AdjacencyGraph& graph, int edge_a, int edge_b,
                                          const ArrangementOptions& options,
                                          const CurveCache* cache) {
  std::vector<PairRoot> out;
  if (edge_a == edge_b) return out;
  const auto& A = graph.edges[edge_a];
  const auto& B = graph.edges[edge_b];
  if (A.from != B.from) return out;
  for (int pa = 0; pa < static_cast<int>(A.domain.size()); ++pa)
    for (int pb = 0; pb < static_cast<int>(B.domain.size()); ++pb) {
      auto r = piece_intersections(graph, edge_a, pa, edge_b, pb, options, cache);
      out.insert(out.end(), r.begin(), r.end());
    }
  std::sort(out.begin(), out.end(),
            [](const PairRoot& x, const PairRoot& y) { return x.time < y.time; });
  return out;
}

// ---------------------------------------------------------------------------
// Circular sweep. The sweep circle of radius r_i(t) meets every departure
// curve at most once, so sweeping by time orders the curves cyclically by
// polar angle; two curves can only cross while adjacent in that order.

namespace {

struct Piece {
  int edge;
  int piece;
  Interval span;
};

class Sweep {
 public:
  Sweep(const AdjacencyGraph& graph, int disc, const ArrangementOptions& options,
        SweepStats& stats)
      : graph_(graph), options_(options), stats_(stats), cache_(graph, disc, options) {
    for (int e : graph.departing[disc]) {
      const auto& dom = graph.edges[e].domain;
      for (int p = 0; p < static_cast<int>(dom.size()); ++p)
        pieces_.push_back({e, p, dom[p]});
    }
    pos_.assign(pieces_.size(), -1);
    for (int e : graph.departing[disc]) out_[e] = {};
  }

  std::vector<IntersectionSequence> run() {
    enum : int { kCross = 0, kDelete = 1, kInsert = 2 };
    for (int p = 0; p < static_cast<int>(pieces_.size()); ++p) {
      queue_.push({pieces_[p].span.lo, kInsert, p, -1, 0});
      queue_.push({pieces_[p].span.hi, kDelete, p, -1, 0});
    }

    while (!queue_.empty()) {
      const double t0 = std::get<0>(queue_.top());
      const double batch_end = t0 + options_.batch_tol;
      std::vector<Entry> crosses, deletes, inserts;
      while (!queue_.empty() && std::get<0>(queue_.top()) <= batch_end) {
        Entry e = queue_.top();
        queue_.pop();
        switch (std::get<1>(e)) {
          case kCross: crosses.push_back(e); break;
          case kDelete: deletes.push_back(e); break;
          default: inserts.push_back(e); break;
        }
      }
      process_crossings(crosses, batch_end);
      for (const Entry& e : deletes) erase(std::get<2>(e));
      for (const Entry& e : inserts) insert(std::get<2>(e), std::get<0>(e));
      now_ = batch_end;
      for (int p : touched_) schedule_neighbors(p);
      touched_.clear();
    }

    std::vector<IntersectionSequence> result;
    for (auto& [edge, seq] : out_) {
      std::sort(seq.begin(), seq.end(), [](const IntersectionEvent& a, const IntersectionEvent& b) {
        return std::tie(a.time, a.other) < std::tie(b.time, b.other);
      });
      result.push_back({edge, std::move(seq)});
    }
    return result;
  }

 private:
  // (time, type, piece p, piece q, root index)
  using Entry = std::tuple<double, int, int, int, int>;

  struct PairState {
    std::vector<PairRoot> roots;
    int next = 0;
  };

  PairState& pair(int p, int q) {
    if (p > q) std::swap(p, q);
    auto [it, fresh] = pairs_.try_emplace({p, q});
    if (fresh) {
      ++stats_.pair_solves;
      it->second.roots = piece_intersections(graph_, pieces_[p].edge, pieces_[p].piece,
                                             pieces_[q].edge, pieces_[q].piece, options_,
                                             &cache_);
    }
    return it->second;
  }

  double angle(int p, double t) const {
    auto a = graph_.edges[pieces_[p].edge].solver.depart_angle(t);
    return a ? normalize_angle(*a) : 0.0;
  }

  bool adjacent(int p, int q) const {
    const int a = pos_[p], b = pos_[q];
    if (a < 0 || b < 0) return false;
    const int n = static_cast<int>(status_.size());
    const int d = std::abs(a - b);
    return d == 1 || (n > 1 && d == n - 1);
  }

  void reindex() {
    for (int k = 0; k < static_cast<int>(status_.size()); ++k) pos_[status_[k]] = k;
  }

  void insert(int p, double t) {
    const double a = angle(p, t);
    int best = -1;
    double best_rel = 0.0;
    for (int k = 0; k < static_cast<int>(status_.size()); ++k) {
      const int q = status_[k];
      double rel = normalize_angle(angle(q, t) - a);
      if (rel == 0.0 && q < p) rel = kTwoPi;  // tie: lower id first
      if (best < 0 || rel < best_rel || (rel == best_rel && q < status_[best])) {
        best = k;
        best_rel = rel;
      }
    }
    // Insert before the next curve counter-clockwise.
    status_.insert(status_.begin() + (best < 0 ? 0 : best), p);
    reindex();
    touched_.push_back(p);
  }

  void erase(int p) {
    const int k = pos_[p];
    if (k < 0) return;
    const int n = static_cast<int>(status_.size());
    const int prev = status_[(k + n - 1) % n];
    status_.erase(status_.begin() + k);
    pos_[p] = -1;
    reindex();
    if (n > 1 && prev != p) touched_.push_back(prev);
  }

  void emit(int p, int q, const PairRoot& r) {
    const int ea = pieces_[p].edge, eb = pieces_[q].edge;
    Vec2 at;
    if (auto st = graph_.edges[ea].solver.solve(r.time)) at = st->from;
    out_[ea].push_back({r.time, ea, eb, at, r.touching});
    out_[eb].push_back({r.time, eb, ea, at, r.touching});
    ++stats_.events;
    if (r.touching) ++stats_.touching;
  }

  void swap(int p, int q) {
    std::swap(status_[pos_[p]], status_[pos_[q]]);
    std::swap(pos_[p], pos_[q]);
    touched_.push_back(p);
    touched_.push_back(q);
  }

  void process_crossings(std::vector<Entry>& pending, double batch_end) {
    bool progress = true;
    while (!pending.empty() && progress) {
      progress = false;
      std::vector<Entry> rest;
      for (const Entry& e : pending) {
        const int p = std::get<2>(e), q = std::get<3>(e), idx = std::get<4>(e);
        PairState& ps = pair(p, q);
        if (ps.next != idx) continue;  // stale
        if (!adjacent(p, q)) {
          rest.push_back(e);
          continue;
        }
        const PairRoot& r = ps.roots[idx];
        ++ps.next;
        emit(p, q, r);
        if (!r.touching) swap(p, q);
        progress = true;
        // A pair made adjacent by this swap may cross in the same batch.
        for (int x : {p, q}) {
          for (int y : neighbors(x)) {
            PairState& s2 = pair(x, y);
            if (s2.next < static_cast<int>(s2.roots.size()) &&
                s2.roots[s2.next].time <= batch_end)
              rest.push_back({s2.roots[s2.next].time, 0, x, y, s2.next});
          }
        }
      }
      std::sort(rest.begin(), rest.end());
      rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
      pending.swap(rest);
    }
    // Roots whose curves never became adjacent within the batch: emit them and
    // repair the order by sorting just after the batch.
    bool repaired = false;
    for (const Entry& e : pending) {
      const int p = std::get<2>(e), q = std::get<3>(e), idx = std::get<4>(e);
      PairState& ps = pair(p, q);
      if (ps.next != idx || pos_[p] < 0 || pos_[q] < 0) continue;
      emit(p, q, ps.roots[idx]);
      ++ps.next;
      repaired = true;
    }
    if (repaired) {
      ++stats_.reorders;
      resort(batch_end + options_.batch_tol);
    }
  }

  void resort(double t) {
    std::vector<std::pair<double, int>> keyed;
    for (int p : status_) keyed.push_back({angle(p, std::min(t, pieces_[p].span.hi)), p});
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t k = 0; k < keyed.size(); ++k) status_[k] = keyed[k].second;
    reindex();
    for (int p : status_) touched_.push_back(p);
  }

  std::vector<int> neighbors(int p) const {
    std::vector<int> out;
    const int n = static_cast<int>(status_.size());
    const int k = pos_[p];
    if (k < 0 || n < 2) return out;
    out.push_back(status_[(k + 1) % n]);
    if (n > 2) out.push_back(status_[(k + n - 1) % n]);
    return out;
  }

  void schedule_neighbors(int p) {
    for (int q : neighbors(p)) {
      PairState& ps = pair(p, q);
      // Roots that passed while the pair was not adjacent mean the cyclic
      // order was inconsistent; record them and fix the order.
      while (ps.next < static_cast<int>(ps.roots.size()) &&
             ps.roots[ps.next].time < now_ - options_.batch_tol) {
        ++stats_.late_roots;
        const PairRoot& r = ps.roots[ps.next++];
        emit(p, q, r);
        if (!r.touching) swap(p, q);
      }
      if (ps.next < static_cast<int>(ps.roots.size()))
        queue_.push({ps.roots[ps.next].time, 0, p, q, ps.next});
    }
  }

  const AdjacencyGraph& graph_;
  ArrangementOptions options_;
  SweepStats& stats_;
  CurveCache cache_;
  std::vector<Piece> pieces_;
  std::vector<int> status_;  // cyclic, counter-clockwise
  std::vector<int> pos_;
  std::vector<int> touched_;
  double now_ = 0.0;
  std::map<std::pair<int, int>, PairState> pairs_;
  std::map<int, std::vector<IntersectionEvent>> out_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue_;
};

}  // namespace

std::vector<IntersectionSequence> sweep_disc(const AdjacencyGraph& graph, int disc,
                                             const ArrangementOptions& options,
                                             SweepStats* stats) {
  SweepStats local;
  Sweep sweep(graph, disc, options, stats ? *stats : local);
  return sweep.run();
}

IntersectionSet build_intersection_set(const AdjacencyGraph& graph,
                                       const ArrangementOptions& options) {
  IntersectionSet set;
  set.sequences.resize(graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e) set.sequences[e].edge = static_cast<int>(e);
  for (int i = 0; i < graph.disc_count(); ++i) {
    for (auto& seq : sweep_disc(graph, i, options, &set.stats))
      set.sequences[seq.edge] = std::move(seq);
  }
  set.k = set.stats.events;
  return set;
}

}  // namespace gdisc

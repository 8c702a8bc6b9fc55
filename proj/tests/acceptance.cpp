// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gdisc/blockedset.hpp"
#include "gdisc/domination.hpp"
#include "gdisc/index.hpp"
#include "gdisc/oracle.hpp"
#include "gdisc/path_io.hpp"
#include "gdisc/planner.hpp"

using namespace gdisc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Disc make_disc(int id, Vec2 c, double r0, std::vector<double> coeffs = {0.0}) {
  return Disc(id, c, r0, VelocityPoly{std::move(coeffs)});
}

Scene random_world(int n, int beta, std::uint64_t seed) {
  RandomSceneOptions opt;
  opt.n = n;
  opt.beta = beta;
  return random_scene(opt, seed);
}

// Free point at least `margin` time units before any disc covers it.
Vec2 free_point(const Scene& s, std::mt19937_64& rng, double margin) {
  std::uniform_real_distribution<double> u(-12.0, 12.0);
  for (;;) {
    const Vec2 p{u(rng), u(rng)};
    if (first_hit(s, p).hit_time > margin) return p;
  }
}

// 1 -------------------------------------------------------------------------
Outcome empty_scene() {
  Scene s;
  s.v_max = 1.0;
  s.horizon = 100.0;
  const auto t0 = Clock::now();
  const QueryResult r = query(preprocess(s), {0, 0}, {3, 4});
  const double secs = seconds_since(t0);
  Outcome o;
  const double err = std::abs(r.arrival_time - 5.0);
  o.pass = r.status == QueryStatus::Found && err <= 1e-9 && secs < 0.1;
  o.detail = fmt("T_d=%.12f |err|=%.2e time=%.4fs", r.arrival_time, err, secs);
  return o;
}

// 2 -------------------------------------------------------------------------
Outcome static_disc() {
  Scene s;
  s.v_max = 1.0;
  s.horizon = 100.0;
  s.discs.push_back(make_disc(0, {0, 0}, 1.0));
  const Vec2 src{-5, 0}, dst{5, 0};
  const double analytic = 2.0 * std::sqrt(24.0) + (kPi - 2.0 * std::acos(0.2));
  const QueryResult r = query(preprocess(s), src, dst);
  const GridParams p = default_grid(s, src, dst);
  const GridResult g = grid_plan(s, src, dst, p);
  Outcome o;
  const double err = std::abs(r.arrival_time - analytic);
  const double grid_gap = std::abs(r.arrival_time - g.arrival_time);
  o.pass = r.status == QueryStatus::Found && err <= 1e-4 && g.reached && grid_gap <= 2.0 * p.dx;
  o.detail = fmt("T_d=%.8f analytic=%.8f |err|=%.2e grid=%.5f (dx=%.4f, |gap|=%.4f <= %.4f)",
                 r.arrival_time, analytic, err, g.arrival_time, p.dx, grid_gap, 2.0 * p.dx);
  return o;
}

// 3 -------------------------------------------------------------------------
Outcome implicit_equation() {
  std::mt19937_64 rng(303);
  long samples = 0, linear_pairs = 0;
  double worst_snapshot = 0.0, worst_spacetime = 0.0, worst_cf = 0.0;
  std::uint64_t seed = 3000;
  while (samples < 1000) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int beta = static_cast<int>(rng() % 3);
    const Scene s = random_world(n, beta, ++seed);
    std::uniform_real_distribution<double> u(0.0, s.horizon);
    for (int k = 0; k < 40 && samples < 1000; ++k) {
      const int i = static_cast<int>(rng() % s.size());
      const int j = static_cast<int>(rng() % s.size());
      if (i == j) continue;
      const TangentKind kind = kAllKinds[rng() % 4];
      const double tau = u(rng);
      const TangentSolver snap(s.discs[i], s.discs[j], kind, {s.v_max, s.horizon, TangentModel::Snapshot});
      const TangentSolver st(s.discs[i], s.discs[j], kind, {s.v_max, s.horizon, TangentModel::SpaceTime});
      auto ls = snap.length(tau);
      auto lt = st.length(tau);
      if (!ls && !lt) continue;
      ++samples;
      if (ls) worst_snapshot = std::max(worst_snapshot, snap.residual(tau, *ls));
      if (lt) worst_spacetime = std::max(worst_spacetime, st.residual(tau, *lt));
      if (s.discs[j].is_linear()) {
        for (const TangentSolver* solver : {&snap, &st}) {
          auto cf = solver->length_closed_form(tau);
          auto it = solver->length_iterative(tau);
          if (cf.has_value() != it.has_value()) {
            worst_cf = std::max(worst_cf, 1.0);
            continue;
          }
          if (cf) {
            ++linear_pairs;
            worst_cf = std::max(worst_cf, std::abs(*cf - *it));
          }
        }
      }
    }
  }
  // Worked case: L = 10, R = 1, v = 0.5, inner -> 8.
  const Disc a = make_disc(0, {0, 0}, 1.0, {0.5}), b = make_disc(1, {10, 0}, 1.0, {0.5});
  const TangentSolver worked(a, b, TangentKind::InnerLeft, {1.0, 100.0, TangentModel::Snapshot});
  const double cf = *worked.length_closed_form(0.0), it = *worked.length_iterative(0.0);
  Outcome o;
  o.pass = worst_snapshot < 1e-9 && worst_spacetime < 1e-9 && worst_cf <= 1e-10 &&
           std::abs(cf - 8.0) <= 1e-10 && std::abs(it - 8.0) <= 1e-10;
  o.detail = fmt(
      "samples=%ld max residual snapshot=%.2e space-time=%.2e; closed-form vs iterative over "
      "%ld linear-target solves max|diff|=%.2e; worked case cf=%.12f it=%.12f",
      samples, worst_snapshot, worst_spacetime, linear_pairs, worst_cf, cf, it);
  return o;
}

// 4 -------------------------------------------------------------------------
Outcome sweep_equivalence() {
  const auto t0 = Clock::now();
  double sweep_secs = 0.0;
  std::mt19937_64 rng(404);
  long pairs = 0, events = 0, mismatched_discs = 0, over_bound = 0;
  int worst_pair = 0;
  for (int sc = 0; sc < 50; ++sc) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const int beta = static_cast<int>(rng() % 3);
    const Scene s = random_world(n, beta, 4000 + sc);
    const AdjacencyGraph g = build_graph(s);
    const int bound = 16 * s.beta() + 8;
    for (int i = 0; i < s.size(); ++i) {
      std::map<std::pair<int, int>, std::vector<double>> brute, swept;
      const auto& dep = g.departing[i];
      const CurveCache cache(g, i, ArrangementOptions{});
      for (std::size_t x = 0; x < dep.size(); ++x)
        for (std::size_t y = x + 1; y < dep.size(); ++y) {
          const auto roots = curve_intersections(g, dep[x], dep[y], {}, &cache);
          ++pairs;
          worst_pair = std::max(worst_pair, static_cast<int>(roots.size()));
          if (static_cast<int>(roots.size()) > bound) ++over_bound;
          for (const auto& r : roots) brute[{dep[x], dep[y]}].push_back(r.time);
        }
      const auto ts = Clock::now();
      const auto sequences = sweep_disc(g, i);
      sweep_secs += seconds_since(ts);
      for (const auto& seq : sequences)
        for (const auto& ev : seq.events)
          if (ev.edge < ev.other) {
            swept[{ev.edge, ev.other}].push_back(ev.time);
            ++events;
          }
      bool same = brute.size() == swept.size();
      for (auto& [key, v] : swept) {
        std::sort(v.begin(), v.end());
        auto it = brute.find(key);
        if (it == brute.end() || it->second.size() != v.size()) {
          same = false;
          continue;
        }
        for (std::size_t m = 0; m < v.size(); ++m) same = same && std::abs(v[m] - it->second[m]) <= 1e-8;
      }
      mismatched_discs += !same;
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = mismatched_discs == 0 && over_bound == 0 && secs < 60.0;
  o.detail = fmt("50 scenes, %ld curve pairs, %ld events; discs with multiset mismatch=%ld; "
                 "max roots per pair=%d, pairs over 16beta+8=%ld; time=%.1fs (sweep %.1fs)",
                 pairs, events, mismatched_discs, worst_pair, over_bound, secs, sweep_secs);
  return o;
}

// 5 -------------------------------------------------------------------------
Outcome blocked_agreement() {
  std::mt19937_64 rng(505);
  long probes = 0, grazing = 0, disagree = 0, blocked_probes = 0;
  long endpoints = 0, at_le = 0, at_contact = 0, uncertified = 0;
  int sc = 0;
  while (probes + grazing < 10000 || sc < 10) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const int beta = static_cast<int>(rng() % 3);
    const Scene s = random_world(n, beta, 5000 + sc++);
    const Preprocessed pre = preprocess(s);
    const auto& g = pre.graph;
    std::uniform_real_distribution<double> u(0.0, s.horizon);
    int got = 0;
    for (int k = 0; k < 20000 && got < 600; ++k) {
      const int e = static_cast<int>(rng() % g.edges.size());
      const double tau = u(rng);
      if (!g.edges[e].in_domain(tau)) continue;
      ++got;
      const double c = third_disc_clearance(g, e, tau, 1000);
      if (std::abs(c) <= 1e-6) {
        ++grazing;
        continue;
      }
      ++probes;
      const bool direct = c < 0.0;
      blocked_probes += direct;
      if (is_blocked(pre.blocked.sequences[e], tau) != direct) ++disagree;
    }
    // Endpoint provenance.
    for (const auto& seq : pre.blocked.sequences) {
      const auto& le = pre.intersections.sequences[seq.edge].events;
      for (const auto& iv : seq.intervals)
        for (auto [t, kind] : {std::pair{iv.lo, iv.lo_kind}, std::pair{iv.hi, iv.hi_kind}}) {
          if (kind == Breakpoint::Domain) continue;
          ++endpoints;
          const bool in_le = std::any_of(le.begin(), le.end(), [&](const IntersectionEvent& ev) {
            return std::abs(ev.time - t) <= 1e-8;
          });
          if (in_le) ++at_le;
          else if (kind == Breakpoint::Contact) ++at_contact;
          else ++uncertified;
        }
    }
  }
  Outcome o;
  o.pass = probes >= 10000 && disagree == 0 && uncertified == 0;
  o.detail = fmt("%d scenes, %ld probes (%ld blocked) + %ld in grazing band; disagreements=%ld; "
                 "interior MBI endpoints=%ld: at L_e events=%ld, at endpoint-contact events=%ld, "
                 "uncertified=%ld",
                 sc, probes, blocked_probes, grazing, disagree, endpoints, at_le, at_contact,
                 uncertified);
  return o;
}

// 6 -------------------------------------------------------------------------
Outcome end_to_end() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(606);
  long found = 0, invalid = 0, slow = 0, both_unreachable = 0, planner_only_unreachable = 0,
       grid_only_unreachable = 0;
  double worst_ratio = 0.0, worst_pen = 0.0;
  std::string first_problem;
  for (int sc = 0; sc < 50; ++sc) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const int beta = static_cast<int>(rng() % 3);
    const Scene s = random_world(n, beta, 6000 + sc);
    const Preprocessed pre = preprocess(s);
    const Vec2 a = free_point(s, rng, 1.0), b = free_point(s, rng, 1.0);
    const QueryResult r = query(pre, a, b);
    GridParams p = default_grid(s, a, b);
    p.dx = 0.05;
    const GridResult g = grid_plan(s, a, b, p);
    const bool ok = r.status == QueryStatus::Found;
    if (!ok && !g.reached) {
      ++both_unreachable;
      continue;
    }
    if (!ok) {
      ++planner_only_unreachable;
      if (first_problem.empty()) first_problem = fmt("scene %d: planner unreachable, grid %.4f", sc, g.arrival_time);
      continue;
    }
    ++found;
    const VerifyReport rep = verify_path(s, r.path, 1e-6, 1e-3);
    worst_pen = std::max(worst_pen, rep.max_penetration);
    if (!rep.ok) {
      ++invalid;
      if (first_problem.empty()) first_problem = fmt("scene %d: %s", sc, rep.message.c_str());
    }
    if (!g.reached) {
      ++grid_only_unreachable;
      continue;
    }
    const double ratio = r.arrival_time / g.arrival_time;
    worst_ratio = std::max(worst_ratio, ratio);
    if (ratio > 1.05) {
      ++slow;
      if (first_problem.empty())
        first_problem = fmt("scene %d: T_d=%.4f grid=%.4f", sc, r.arrival_time, g.arrival_time);
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = invalid == 0 && slow == 0 && planner_only_unreachable == 0 &&
           grid_only_unreachable == 0 && secs < 600.0;
  o.detail = fmt("50 scenes: found=%ld (verify failures=%ld, max penetration=%.2e), "
                 "max T_d/grid=%.4f (over 1.05: %ld); unreachable both=%ld, planner-only=%ld, "
                 "grid-only=%ld; time=%.1fs",
                 found, invalid, worst_pen, worst_ratio, slow, both_unreachable,
                 planner_only_unreachable, grid_only_unreachable, secs);
  if (!first_problem.empty()) o.detail += "; first: " + first_problem;
  return o;
}

// 7 -------------------------------------------------------------------------
Outcome monotonicity() {
  std::mt19937_64 rng(707);
  long compared = 0, decreases = 0, gained_reach = 0, lost_reach = 0, neither = 0;
  double worst = 0.0;
  std::string first_problem;
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int beta = static_cast<int>(rng() % 3);
    const Scene big = random_world(n + 1, beta, 7000 + k);
    Scene small = big;
    small.discs.pop_back();
    const Vec2 a = free_point(big, rng, 1.0), b = free_point(big, rng, 1.0);
    const QueryResult rs = query(preprocess(small), a, b);
    const QueryResult rb = query(preprocess(big), a, b);
    const bool fs = rs.status == QueryStatus::Found, fb = rb.status == QueryStatus::Found;
    if (!fs && !fb) {
      ++neither;
      continue;
    }
    if (!fs) {
      ++gained_reach;
      if (first_problem.empty()) first_problem = fmt("pair %d: only the larger scene is reachable", k);
      continue;
    }
    if (!fb) {
      ++lost_reach;
      continue;
    }
    ++compared;
    const double drop = rs.arrival_time - rb.arrival_time;
    worst = std::max(worst, drop);
    if (drop > 1e-9) {
      ++decreases;
      if (first_problem.empty())
        first_problem = fmt("pair %d: %.9f -> %.9f", k, rs.arrival_time, rb.arrival_time);
    }
  }
  Outcome o;
  o.pass = decreases == 0 && gained_reach == 0;
  o.detail = fmt("100 pairs: compared=%ld, decreases=%ld (max drop %.2e), reachable only with the "
                 "extra disc=%ld, became unreachable=%ld, unreachable in both=%ld",
                 compared, decreases, worst, gained_reach, lost_reach, neither);
  if (!first_problem.empty()) o.detail += "; first: " + first_problem;
  return o;
}

// 8 -------------------------------------------------------------------------
Outcome determinism() {
  std::mt19937_64 rng(808);
  int runs = 0, differing = 0;
  for (int k = 0; k < 5; ++k) {
    const Scene s = random_world(3 + k, k % 3, 8000 + k);
    const Vec2 a = free_point(s, rng, 1.0), b = free_point(s, rng, 1.0);
    const Preprocessed p1 = preprocess(s), p2 = preprocess(s);
    const std::string i1 = save_index(p1), i2 = save_index(p2);
    const std::string q1 = path_to_json(query(p1, a, b));
    const std::string q2 = path_to_json(query(p2, a, b));
    const std::string q3 = path_to_json(query(load_index(i1, s), a, b));
    ++runs;
    if (i1 != i2 || q1 != q2 || q1 != q3) ++differing;
  }
  Outcome o;
  o.pass = differing == 0;
  o.detail = fmt("%d scenes, index + path documents compared across runs and an index "
                 "reload: differing=%d", runs, differing);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "empty-scene exactness", empty_scene},
      {2, "static single disc", static_disc},
      {3, "implicit-equation certification", implicit_equation},
      {4, "sweep/brute-force equivalence", sweep_equivalence},
      {5, "blocked-set oracle agreement", blocked_agreement},
      {6, "end-to-end validity and near-optimality", end_to_end},
      {7, "monotonicity under added discs", monotonicity},
      {8, "determinism", determinism},
  };
  std::vector<int> only;
  for (int k = 1; k < argc; ++k) only.push_back(std::atoi(argv[k]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const Outcome o = c.run();
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}

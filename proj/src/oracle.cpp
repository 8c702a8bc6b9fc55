#include "gdisc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "gdisc/clearance.hpp"
#include "gdisc/domination.hpp"

namespace gdisc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Box {
  double x0, y0, x1, y1;
};

Box scene_box(const Scene& scene, Vec2 s, Vec2 d, double margin) {
  Box b{std::min(s.x, d.x), std::min(s.y, d.y), std::max(s.x, d.x), std::max(s.y, d.y)};
  for (const Disc& c : scene.discs) {
    b.x0 = std::min(b.x0, c.center().x - c.radius0());
    b.y0 = std::min(b.y0, c.center().y - c.radius0());
    b.x1 = std::max(b.x1, c.center().x + c.radius0());
    b.y1 = std::max(b.y1, c.center().y + c.radius0());
  }
  return {b.x0 - margin, b.y0 - margin, b.x1 + margin, b.y1 + margin};
}
}  // namespace

GridParams default_grid(const Scene& scene, Vec2 s, Vec2 d) {
  const Box b = scene_box(scene, s, d, 0.0);
  const double diameter = std::hypot(b.x1 - b.x0, b.y1 - b.y0);
  GridParams p;
  p.dx = std::max(0.02, 0.05 * diameter / 10.0);
  return p;
}

GridResult grid_plan(const Scene& scene, Vec2 s, Vec2 d, const GridParams& params) {
  const double v = scene.v_max;
  const double dx = params.dx;
  const double dt = params.dt > 0.0 ? params.dt : dx / (64.0 * v);
  const double half = 0.5 * dx;
  const Box box = scene_box(scene, s, d, params.margin);

  const int a0 = static_cast<int>(std::floor((box.x0 - s.x) / dx));
  const int a1 = static_cast<int>(std::ceil((box.x1 - s.x) / dx));
  const int b0 = static_cast<int>(std::floor((box.y0 - s.y) / dx));
  const int b1 = static_cast<int>(std::ceil((box.y1 - s.y) / dx));
  const int w = a1 - a0 + 1, h = b1 - b0 + 1;
  const long cells = static_cast<long>(w) * h;

  auto point = [&](long idx) {
    const int a = static_cast<int>(idx / h) + a0, b = static_cast<int>(idx % h) + b0;
    return Vec2{s.x + a * dx, s.y + b * dx};
  };
  // Time from which a lattice point is no longer usable (lazy).
  std::vector<double> closes(cells, -1.0);
  auto close_time = [&](long idx) {
    if (closes[idx] >= 0.0) return closes[idx];
    const Vec2 x = point(idx);
    double t = kInf;
    for (const Disc& disc : scene.discs) {
      // clearance <= dx/2  <=>  r(t) >= |x - o| - dx/2
      t = std::min(t, reach_time(disc, distance(x, disc.center()) - half, scene.horizon));
    }
    return closes[idx] = std::min(t, scene.horizon);
  };
  auto segment_free = [&](Vec2 p, Vec2 q, double t0, double dur) {
    const int m = std::max(2, static_cast<int>(std::ceil(2.0 * distance(p, q) / dx)));
    for (int k = 1; k < m; ++k) {
      const double f = static_cast<double>(k) / m;
      const Vec2 x = p + (q - p) * f;
      const double t = t0 + f * dur;
      for (const Disc& disc : scene.discs)
        if (distance(x, disc.center()) - disc.radius(t) <= 0.0) return false;
    }
    return true;
  };

  struct Move {
    int da, db;
    double dur;
  };
  std::vector<Move> moves;
  for (int da = -params.reach; da <= params.reach; ++da)
    for (int db = -params.reach; db <= params.reach; ++db) {
      if ((da == 0 && db == 0) || std::gcd(std::abs(da), std::abs(db)) != 1) continue;
      const double exact = std::hypot(da, db) * dx / v;
      moves.push_back({da, db, std::ceil(exact / dt - 1e-9) * dt});
    }

  GridResult result;
  result.cells = cells;
  const long start = static_cast<long>(-a0) * h + (-b0);
  if (!(close_time(start) > 0.0)) return result;

  std::vector<double> best(cells, kInf);
  std::vector<char> done(cells, 0);
  using Entry = std::pair<double, long>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  best[start] = 0.0;
  queue.push({0.0, start});
  double answer = kInf;
  const double final_reach = params.reach * dx;

  while (!queue.empty()) {
    auto [t, idx] = queue.top();
    queue.pop();
    if (done[idx]) continue;
    if (t >= answer) break;
    done[idx] = 1;
    ++result.expanded;
    const Vec2 p = point(idx);

    const double to_d = distance(p, d);
    if (to_d <= final_reach) {
      const double dur = std::ceil(to_d / v / dt - 1e-9) * dt;
      bool ok = t + dur <= scene.horizon && segment_free(p, d, t, dur);
      for (const Disc& disc : scene.discs) ok = ok && clearance(disc, d, t + dur) > 0.0;
      if (ok) answer = std::min(answer, t + dur);
    }

    const int a = static_cast<int>(idx / h), b = static_cast<int>(idx % h);
    for (const Move& mv : moves) {
      const int na = a + mv.da, nb = b + mv.db;
      if (na < 0 || na >= w || nb < 0 || nb >= h) continue;
      const long nidx = static_cast<long>(na) * h + nb;
      const double nt = t + mv.dur;
      if (done[nidx] || nt >= best[nidx] || nt >= answer) continue;
      if (!(nt < close_time(nidx))) continue;
      if (!segment_free(p, point(nidx), t, mv.dur)) continue;
      best[nidx] = nt;
      queue.push({nt, nidx});
    }
  }
  if (answer < kInf) {
    result.reached = true;
    result.arrival_time = answer;
  }
  return result;
}

VerifyReport verify_path(const Scene& scene, const RobotPath& path, double eps, double dt) {
  VerifyReport rep;
  const double v = scene.v_max;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    if (rep.message.empty()) rep.message = std::move(msg);
  };
  auto tol = [](double scale) { return 1e-6 * std::max(1.0, std::abs(scale)); };
  char buf[256];

  for (std::size_t m = 0; m < path.legs.size() && rep.ok; ++m) {
    const Leg& leg = path.legs[m];
    if (!(leg.t_end >= leg.t_start)) {
      std::snprintf(buf, sizeof buf, "leg %zu: end time before start time", m);
      fail(buf);
      break;
    }
    if (leg.t_start < -1e-9 || leg.t_end > scene.horizon + 1e-9) {
      std::snprintf(buf, sizeof buf, "leg %zu: outside [0, horizon]", m);
      fail(buf);
      break;
    }
    if (m > 0) {
      const Leg& prev = path.legs[m - 1];
      if (std::abs(leg.t_start - prev.t_end) > 1e-9 ||
          distance(leg.from, prev.to) > tol(norm(leg.from))) {
        std::snprintf(buf, sizeof buf, "leg %zu: not contiguous with leg %zu", m, m - 1);
        fail(buf);
        break;
      }
    }

    const Disc* ride = nullptr;
    if (leg.kind == LegKind::Tangent) {
      const double len = distance(leg.from, leg.to);
      const double expected = v * leg.duration();
      if (std::abs(len - expected) > tol(expected)) {
        std::snprintf(buf, sizeof buf, "leg %zu: length %.9g but v_max * duration = %.9g", m, len,
                      expected);
        fail(buf);
        break;
      }
    } else {
      const int k = scene.index_of(leg.disc_id);
      if (k < 0) {
        std::snprintf(buf, sizeof buf, "leg %zu: unknown disc %d", m, leg.disc_id);
        fail(buf);
        break;
      }
      ride = &scene.discs[k];
      const double r0 = ride->radius(leg.t_start);
      if (std::abs(distance(leg.from, ride->center()) - r0) > tol(r0)) {
        std::snprintf(buf, sizeof buf, "leg %zu: spiral start is off the boundary of disc %d", m,
                      leg.disc_id);
        fail(buf);
        break;
      }
      for (double t = leg.t_start; t <= leg.t_end; t += std::max(dt, 1e-3))
        if (!spiral_rate(*ride, t, v)) {
          std::snprintf(buf, sizeof buf, "leg %zu: disc %d grows too fast to follow", m,
                        leg.disc_id);
          fail(buf);
          break;
        }
      if (!rep.ok) break;
    }

    const LegTrack track(leg, ride, v);
    if (ride) {
      const Vec2 end = track.position(leg.t_end);
      if (distance(end, leg.to) > tol(ride->radius(leg.t_end))) {
        std::snprintf(buf, sizeof buf, "leg %zu: spiral end differs from recorded end by %.3g", m,
                      distance(end, leg.to));
        fail(buf);
        break;
      }
    }
    const int steps = std::max(1, static_cast<int>(std::ceil(leg.duration() / dt)));
    for (int k = 0; k <= steps; ++k) {
      const double t = k == steps ? leg.t_end : leg.t_start + k * dt;
      const Vec2 x = track.position(t);
      for (const Disc& disc : scene.discs) {
        const double pen = disc.radius(t) - distance(x, disc.center());
        if (pen > rep.max_penetration) {
          rep.max_penetration = pen;
          rep.disc_id = disc.id();
          rep.time = t;
        }
      }
    }
    if (rep.max_penetration > eps) {
      std::snprintf(buf, sizeof buf, "leg %zu: penetrates disc %d by %.3g at t=%.9g", m,
                    rep.disc_id, rep.max_penetration, rep.time);
      fail(buf);
    }
  }
  return rep;
}

}  // namespace gdisc

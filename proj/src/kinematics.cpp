#include "gdisc/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gdisc {

std::string_view to_string(TangentKind k) {
  switch (k) {
    case TangentKind::InnerLeft: return "inner-left";
    case TangentKind::InnerRight: return "inner-right";
    case TangentKind::OuterLeft: return "outer-left";
    case TangentKind::OuterRight: return "outer-right";
  }
  return "?";
}

TangentKind parse_tangent_kind(std::string_view s) {
  for (TangentKind k : kAllKinds)
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown tangent kind: " + std::string(s));
}

std::string_view to_string(TangentModel m) {
  return m == TangentModel::SpaceTime ? "space-time" : "snapshot";
}

TangentModel parse_tangent_model(std::string_view s) {
  if (s == "space-time") return TangentModel::SpaceTime;
  if (s == "snapshot") return TangentModel::Snapshot;
  throw std::invalid_argument("unknown tangent model: " + std::string(s));
}

std::string_view to_string(Turn t) { return t == Turn::Cw ? "cw" : "ccw"; }

double radius(const Disc& disc, double t, double horizon) {
  if (!(t >= 0.0 && t <= horizon))
    throw DomainError("time " + std::to_string(t) + " outside [0, horizon]");
  return disc.radius(t);
}

// ---------------------------------------------------------------------------

TangentSolver::TangentSolver(Disc from, Disc to, TangentKind kind, MotionLimits limits)
    : from_(std::move(from)), to_(std::move(to)), kind_(kind), limits_(limits) {
  const Vec2 d = to_.center() - from_.center();
  dist_ = norm(d);
  theta_ij_ = angle_of(d);
  axis_ = dist_ > 0.0 ? d * (1.0 / dist_) : Vec2{1.0, 0.0};
}

double TangentSolver::departure_slope(double tau) const {
  if (limits_.model == TangentModel::Snapshot) return 0.0;
  return from_.growth_rate(tau) / limits_.v_max;
}

TangentSolver::Terms TangentSolver::terms(double tau, double rho_i, double slope_i,
                                          double length) const {
  const double v = limits_.v_max;
  const double t = tau + length / v;
  const double rho_j = to_.radius(t);
  const double drho_j = to_.growth_rate(t) / v;  // d rho_j / d length
  double b = 0.0, db = 0.0;
  if (limits_.model == TangentModel::SpaceTime) {
    b = std::min(drho_j, 1.0);
    db = to_.growth_accel(t) / (v * v);
  }
  const double beta = std::sqrt(std::max(0.0, 1.0 - b * b));
  const double dbeta = beta > 0.0 ? -b * db / beta : 0.0;
  const double alpha = std::sqrt(std::max(0.0, 1.0 - slope_i * slope_i));
  const double s = is_inner(kind_) ? 1.0 : -1.0;

  Terms out;
  out.a = length + rho_i * slope_i - rho_j * b;
  out.da = 1.0 - drho_j * b - rho_j * db;
  out.b = rho_i * alpha + s * rho_j * beta;
  out.db = s * (drho_j * beta + rho_j * dbeta);
  return out;
}

std::optional<double> TangentSolver::length(double tau) const {
  return to_.is_linear() ? length_closed_form(tau) : length_iterative(tau);
}

std::optional<double> TangentSolver::length_closed_form(double tau) const {
  if (!(tau >= 0.0 && tau <= limits_.horizon)) return std::nullopt;
  const double slope = departure_slope(tau);
  if (slope >= 1.0) return std::nullopt;
  const double v = limits_.v_max;
  const double rho_i = from_.radius(tau);
  const double c = to_.growth_rate(tau);  // constant for a linear target
  const double rho_j0 = to_.radius(tau);
  const double b = limits_.model == TangentModel::SpaceTime ? c / v : 0.0;
  const double beta = std::sqrt(std::max(0.0, 1.0 - b * b));
  const double alpha = std::sqrt(std::max(0.0, 1.0 - slope * slope));
  const double s = is_inner(kind_) ? 1.0 : -1.0;

  // A = a1 l + a0, B = b1 l + b0 with rho_j = rho_j0 + (c/V) l.
  const double a1 = 1.0 - (c / v) * b;
  const double a0 = rho_i * slope - rho_j0 * b;
  const double b1 = s * beta * c / v;
  const double b0 = rho_i * alpha + s * beta * rho_j0;
  const double qa = a1 * a1 + b1 * b1;
  const double qb = 2.0 * (a1 * a0 + b1 * b0);
  const double qc = a0 * a0 + b0 * b0 - dist_ * dist_;
  if (!(qc < 0.0)) return std::nullopt;
  const double disc = std::sqrt(qb * qb - 4.0 * qa * qc);
  // Unique positive root; pick the cancellation-free form.
  const double l = qb > 0.0 ? 2.0 * qc / (-qb - disc) : (-qb + disc) / (2.0 * qa);
  if (l > v * (limits_.horizon - tau)) return std::nullopt;
  if (a1 * l + a0 < 0.0) return std::nullopt;
  return l;
}

std::optional<double> TangentSolver::length_iterative(double tau) const {
  if (!(tau >= 0.0 && tau <= limits_.horizon)) return std::nullopt;
  const double slope = departure_slope(tau);
  if (slope >= 1.0) return std::nullopt;
  const double rho_i = from_.radius(tau);
  const double l_max = limits_.v_max * (limits_.horizon - tau);
  const double L2 = dist_ * dist_;
  auto f = [&](double l) {
    Terms tm = terms(tau, rho_i, slope, l);
    return tm.a * tm.a + tm.b * tm.b - L2;
  };

  double lo = 0.0;
  double f_lo = f(0.0);
  if (!(f_lo < 0.0)) return std::nullopt;
  constexpr int kScan = 16;
  double hi = -1.0;
  for (int k = 1; k <= kScan; ++k) {
    const double l = l_max * k / kScan;
    const double fl = f(l);
    if (fl >= 0.0) {
      hi = l;
      break;
    }
    lo = l;
    f_lo = fl;
  }
  if (hi < 0.0) return std::nullopt;

  // Safeguarded Newton inside [lo, hi] where f(lo) < 0 <= f(hi).
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    Terms tm = terms(tau, rho_i, slope, x);
    const double fx = tm.a * tm.a + tm.b * tm.b - L2;
    if (fx < 0.0) lo = x; else hi = x;
    const double dfx = 2.0 * (tm.a * tm.da + tm.b * tm.db);
    double next = dfx != 0.0 ? x - fx / dfx : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::abs(next - x) < 1e-12 || hi - lo < 1e-12;
    x = next;
    if (done) break;
  }
  if (terms(tau, rho_i, slope, x).a < 0.0) return std::nullopt;
  return x;
}

double TangentSolver::residual(double tau, double length) const {
  const double slope = departure_slope(tau);
  const Terms tm = terms(tau, from_.radius(tau), slope, length);
  const double root = std::sqrt(std::max(0.0, dist_ * dist_ - tm.b * tm.b));
  return std::abs(root - tm.a) / std::max(1.0, length);
}

TangentState TangentSolver::build(double tau, double length) const {
  const double v = limits_.v_max;
  const double slope = departure_slope(tau);
  const double alpha = std::sqrt(std::max(0.0, 1.0 - slope * slope));
  const double rho_i = from_.radius(tau);
  const double t_arr = tau + length / v;
  const double rho_j = to_.radius(t_arr);
  double b = 0.0;
  if (limits_.model == TangentModel::SpaceTime) b = std::min(to_.growth_rate(t_arr) / v, 1.0);
  const double beta = std::sqrt(std::max(0.0, 1.0 - b * b));
  const Terms tm = terms(tau, rho_i, slope, length);

  const double eps_p = side_of(kind_);
  const double eps_q = is_inner(kind_) ? -eps_p : eps_p;
  const double heading = theta_ij_ - std::atan2(eps_p * tm.b, tm.a);
  const Vec2 w = polar(1.0, heading);
  const Vec2 w_perp{-w.y, w.x};

  TangentState st;
  st.depart_time = tau;
  st.arrive_time = t_arr;
  st.length = length;
  st.heading = wrap_angle(heading);
  const Vec2 m_p = w * slope + w_perp * (alpha * eps_p);
  const Vec2 m_q = w * b + w_perp * (beta * eps_q);
  st.from = from_.center() + m_p * rho_i;
  st.to = to_.center() + m_q * rho_j;
  st.depart_angle = wrap_angle(heading + eps_p * std::atan2(alpha, slope));
  st.arrive_angle = wrap_angle(angle_of(m_q));
  return st;
}

std::optional<TangentState> TangentSolver::solve(double tau) const {
  auto l = length(tau);
  if (!l) return std::nullopt;
  return build(tau, *l);
}

std::optional<double> TangentSolver::depart_angle(double tau) const {
  auto l = length(tau);
  if (!l) return std::nullopt;
  const double slope = departure_slope(tau);
  const Terms tm = terms(tau, from_.radius(tau), slope, *l);
  const double eps_p = side_of(kind_);
  const double alpha = std::sqrt(std::max(0.0, 1.0 - slope * slope));
  return wrap_angle(theta_ij_ - std::atan2(eps_p * tm.b, tm.a) + eps_p * std::atan2(alpha, slope));
}

std::vector<Interval> tangent_domain(const TangentSolver& solver, int samples, double tol) {
  const double h = solver.limits().horizon;
  auto exists = [&](double t) { return solver.length(t).has_value(); };
  // Boundary between a sample where existence is `inside_at_a` and one where it is not.
  auto refine = [&](double a, double b, bool inside_at_a) {
    while (b - a > tol) {
      const double m = 0.5 * (a + b);
      if (exists(m) == inside_at_a) a = m; else b = m;
    }
    return inside_at_a ? a : b;
  };

  std::vector<Interval> pieces;
  double prev_t = 0.0;
  bool prev_in = exists(0.0);
  double start = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double t = h * k / samples;
    const bool in = exists(t);
    if (in && !prev_in) start = refine(prev_t, t, false);
    if (!in && prev_in) pieces.push_back({start, refine(prev_t, t, true)});
    prev_t = t;
    prev_in = in;
  }
  if (prev_in) pieces.push_back({start, h});
  return pieces;
}

TangentState tangent_length(const TangentSolver& edge, double tau) {
  auto st = edge.solve(tau);
  if (!st)
    throw DomainError("no " + std::string(to_string(edge.kind())) + " tangent from disc " +
                      std::to_string(edge.from().id()) + " to disc " +
                      std::to_string(edge.to().id()) + " at t=" + std::to_string(tau));
  return *st;
}

Vec2 departure_position(const TangentSolver& edge, double tau) {
  return tangent_length(edge, tau).from;
}

// ---------------------------------------------------------------------------

std::optional<double> spiral_rate(const Disc& disc, double t, double v_max) {
  const double r = disc.radius(t);
  const double dr = disc.growth_rate(t);
  if (!(r > 0.0) || dr >= v_max) return std::nullopt;
  return std::sqrt(v_max * v_max - dr * dr) / r;
}

namespace {

// The angular rate depends on t only, so one RK4 step is Simpson's rule.
std::optional<double> sweep(const Disc& disc, double t0, double t1, double v_max) {
  auto f0 = spiral_rate(disc, t0, v_max);
  auto fm = spiral_rate(disc, 0.5 * (t0 + t1), v_max);
  auto f1 = spiral_rate(disc, t1, v_max);
  if (!f0 || !fm || !f1) return std::nullopt;
  return (t1 - t0) / 6.0 * (*f0 + 4.0 * *fm + *f1);
}

double step_size(double rate, double max_step, double max_angle_step) {
  return std::min(max_step, max_angle_step / rate);
}

}  // namespace

std::optional<double> spiral_angle(const Disc& disc, double theta0, Turn turn, double t0,
                                   double t1, double v_max, double max_step) {
  double theta = theta0;
  double t = t0;
  const double sign = static_cast<double>(turn);
  while (t < t1) {
    auto rate = spiral_rate(disc, t, v_max);
    if (!rate) return std::nullopt;
    const double h = std::min(step_size(*rate, max_step, 0.02), t1 - t);
    auto d = sweep(disc, t, t + h, v_max);
    if (!d) return std::nullopt;
    theta += sign * *d;
    t += h;
  }
  return theta;
}

SpiralRun race_spiral(const Disc& disc, double start_angle, Turn turn, double tau,
                      std::span<const TangentSolver* const> targets, const MotionLimits& limits,
                      const SpiralOptions& options) {
  const double v = limits.v_max;
  const double sign = static_cast<double>(turn);
  const std::size_t n = targets.size();

  struct Track {
    bool met = false;
    bool active = false;
    double delta = 0.0;   // unwrapped robot angle minus target angle
    double target = 0.0;  // target angle at the current step
  };
  std::vector<Track> tracks(n);
  SpiralRun run;
  std::size_t remaining = n;

  double t = tau;
  double theta = start_angle;
  for (std::size_t k = 0; k < n; ++k) {
    auto c = targets[k]->depart_angle(t);
    if (!c) continue;
    tracks[k].active = true;
    tracks[k].target = *c;
    tracks[k].delta = wrap_angle(theta - *c);
    if (std::abs(tracks[k].delta) <= 1e-12) {
      tracks[k].met = true;
      --remaining;
      run.meets.push_back({static_cast<int>(k), t, theta});
    }
  }

  const double limit = kTwoPi * options.max_revolutions;
  run.stop_reason = "horizon";
  while (remaining > 0) {
    if (t >= limits.horizon) {
      run.stop_reason = "horizon";
      break;
    }
    if (std::abs(theta - start_angle) >= limit) {
      run.stop_reason = "revolution";
      break;
    }
    auto rate = spiral_rate(disc, t, v);
    if (!rate) {
      run.stop_reason = "rate";
      break;
    }
    const double h = std::min(step_size(*rate, options.max_step, options.max_angle_step),
                              limits.horizon - t);
    auto d = sweep(disc, t, t + h, v);
    if (!d) {
      run.stop_reason = "rate";
      break;
    }
    const double t_new = t + h;
    const double theta_new = theta + sign * *d;

    for (std::size_t k = 0; k < n; ++k) {
      Track& tr = tracks[k];
      if (tr.met) continue;
      auto c = targets[k]->depart_angle(t_new);
      if (!c) {
        tr.active = false;
        continue;
      }
      if (!tr.active) {
        tr.active = true;
        tr.target = *c;
        tr.delta = wrap_angle(theta_new - *c);
        continue;
      }
      const double base = theta - tr.target;
      const double d_new = tr.delta + wrap_angle((theta_new - *c) - base);
      const double lo = std::min(tr.delta, d_new);
      const double hi = std::max(tr.delta, d_new);
      const double m = std::floor(hi / kTwoPi);
      const double level = kTwoPi * m;
      if (level >= lo && level != tr.delta) {
        // Localize the first time the difference reaches `level`.
        const double s0 = tr.delta - level;
        auto g = [&](double s) -> std::optional<double> {
          auto cs = targets[k]->depart_angle(s);
          auto ds = sweep(disc, t, s, v);
          if (!cs || !ds) return std::nullopt;
          return tr.delta + wrap_angle((theta + sign * *ds - *cs) - base) - level;
        };
        double a = t, b = t_new;
        while (b - a > options.event_tol) {
          const double mid = 0.5 * (a + b);
          auto gm = g(mid);
          if (gm && (*gm < 0.0) == (s0 < 0.0) && *gm != 0.0) a = mid; else b = mid;
        }
        auto db = sweep(disc, t, b, v);
        tr.met = true;
        --remaining;
        run.meets.push_back({static_cast<int>(k), b, theta + sign * (db ? *db : 0.0)});
        continue;
      }
      tr.delta = d_new;
      tr.target = *c;
    }
    t = t_new;
    theta = theta_new;
  }
  if (remaining == 0 && n > 0) run.stop_reason = "all-met";
  run.end_time = t;
  std::stable_sort(run.meets.begin(), run.meets.end(),
                   [](const SpiralMeet& x, const SpiralMeet& y) { return x.time < y.time; });
  return run;
}

SpiralResult spiral_traverse(const Disc& disc, double start_angle, Turn turn, double tau,
                             const TangentSolver& target, const MotionLimits& limits,
                             const SpiralOptions& options) {
  const TangentSolver* list[] = {&target};
  SpiralRun run = race_spiral(disc, start_angle, turn, tau, list, limits, options);
  SpiralResult out;
  if (!run.meets.empty()) {
    out.met = true;
    out.arrival_time = run.meets.front().time;
    out.end_angle = run.meets.front().angle;
  } else {
    out.reason = run.stop_reason;
  }
  return out;
}

// ---------------------------------------------------------------------------

Leg tangent_leg(const TangentState& st) {
  Leg leg;
  leg.kind = LegKind::Tangent;
  leg.t_start = st.depart_time;
  leg.t_end = st.arrive_time;
  leg.from = st.from;
  leg.to = st.to;
  return leg;
}

Leg spiral_leg(const Disc& disc, double start_angle, Turn turn, double t_start, double t_end,
               double end_angle) {
  Leg leg;
  leg.kind = LegKind::Spiral;
  leg.t_start = t_start;
  leg.t_end = t_end;
  leg.from = disc.center() + polar(disc.radius(t_start), start_angle);
  leg.to = disc.center() + polar(disc.radius(t_end), end_angle);
  leg.disc_id = disc.id();
  leg.turn = turn;
  return leg;
}

Leg robot_path(const TangentSolver& edge, double tau) {
  return tangent_leg(tangent_length(edge, tau));
}

LegTrack::LegTrack(const Leg& leg, const Disc* disc, double v_max, double max_step)
    : leg_(leg), disc_(disc), v_max_(v_max), step_(max_step) {
  if (leg_.kind != LegKind::Spiral) return;
  if (!disc_) throw std::invalid_argument("spiral leg needs its disc");
  double t = leg_.t_start;
  double theta = angle_of(leg_.from - disc_->center());
  const double sign = static_cast<double>(leg_.turn);
  node_t_.push_back(t);
  node_theta_.push_back(theta);
  while (t < leg_.t_end) {
    auto rate = spiral_rate(*disc_, t, v_max_);
    if (!rate) break;
    const double h = std::min(step_size(*rate, step_, 0.02), leg_.t_end - t);
    auto d = sweep(*disc_, t, t + h, v_max_);
    if (!d) break;
    theta += sign * *d;
    t += h;
    node_t_.push_back(t);
    node_theta_.push_back(theta);
  }
}

Vec2 LegTrack::position(double t) const {
  if (leg_.kind == LegKind::Tangent) {
    const double span = leg_.t_end - leg_.t_start;
    if (span <= 0.0) return leg_.from;
    const double u = std::clamp((t - leg_.t_start) / span, 0.0, 1.0);
    return leg_.from + (leg_.to - leg_.from) * u;
  }
  t = std::clamp(t, leg_.t_start, leg_.t_end);
  auto it = std::upper_bound(node_t_.begin(), node_t_.end(), t);
  const std::size_t k = it == node_t_.begin() ? 0 : static_cast<std::size_t>(it - node_t_.begin()) - 1;
  double theta = node_theta_[k];
  if (t > node_t_[k]) {
    auto d = sweep(*disc_, node_t_[k], t, v_max_);
    if (d) theta += static_cast<double>(leg_.turn) * *d;
  }
  return disc_->center() + polar(disc_->radius(t), theta);
}

}  // namespace gdisc

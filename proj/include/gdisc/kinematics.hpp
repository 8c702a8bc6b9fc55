#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gdisc/geometry.hpp"
#include "gdisc/scene.hpp"

namespace gdisc {

/// The four tangents of an ordered disc pair. Left/Right is the half-plane of
/// the departure point relative to the directed center line from -> to.
enum class TangentKind { InnerLeft, InnerRight, OuterLeft, OuterRight };

inline constexpr TangentKind kAllKinds[] = {TangentKind::InnerLeft, TangentKind::InnerRight,
                                            TangentKind::OuterLeft, TangentKind::OuterRight};

inline bool is_inner(TangentKind k) {
  return k == TangentKind::InnerLeft || k == TangentKind::InnerRight;
}
/// +1 for Left, -1 for Right.
inline int side_of(TangentKind k) {
  return (k == TangentKind::InnerLeft || k == TangentKind::OuterLeft) ? 1 : -1;
}
std::string_view to_string(TangentKind k);
TangentKind parse_tangent_kind(std::string_view s);

/// How a straight leg touches the growing discs at its ends.
///
/// Snapshot: the segment is a common tangent of the circles C_i(tau) and
/// C_j(tau'), i.e. the contact radius is perpendicular to the segment at both
/// ends. Space-time: the segment is tangent to the growing discs in space-time,
/// so at each contact the robot's radial speed equals the disc's growth rate
/// r'(t). The two coincide for static discs and for zero-radius endpoints.
enum class TangentModel { SpaceTime, Snapshot };
std::string_view to_string(TangentModel m);
TangentModel parse_tangent_model(std::string_view s);

struct MotionLimits {
  double v_max = 1.0;
  double horizon = 100.0;
  TangentModel model = TangentModel::SpaceTime;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-horizon checked radius r(t) = v(t) t + R.
double radius(const Disc& disc, double t, double horizon);

/// A concrete tangent leg for one departure time.
struct TangentState {
  double depart_time = 0.0;
  double arrive_time = 0.0;
  double length = 0.0;
  Vec2 from;
  Vec2 to;
  double depart_angle = 0.0;  // polar angle of `from` about the departure center, (-pi, pi]
  double arrive_angle = 0.0;  // polar angle of `to` about the arrival center
  double heading = 0.0;       // direction of travel
};

/// Tangent-leg evaluator for one ordered disc pair and kind. The departure
/// Steiner point's trajectory over departure time is the departure curve.
class TangentSolver {
 public:
  TangentSolver(Disc from, Disc to, TangentKind kind, MotionLimits limits);

  const Disc& from() const { return from_; }
  const Disc& to() const { return to_; }
  TangentKind kind() const { return kind_; }
  const MotionLimits& limits() const { return limits_; }
  double center_distance() const { return dist_; }
  double center_angle() const { return theta_ij_; }

  /// Full leg at departure time tau, or nullopt when no tangent exists whose
  /// arrival is within the horizon.
  std::optional<TangentState> solve(double tau) const;
  /// Leg length only; picks the closed form when the target grows linearly.
  std::optional<double> length(double tau) const;
  /// Departure-curve polar angle, (-pi, pi].
  std::optional<double> depart_angle(double tau) const;

  /// Quadratic solution; valid only when the target disc grows linearly.
  std::optional<double> length_closed_form(double tau) const;
  /// Bracketed Newton solution; valid for any velocity degree.
  std::optional<double> length_iterative(double tau) const;
  /// |sqrt(L^2 - B^2) - A| / max(1, l) for the defining equation L^2 = A^2 + B^2;
  /// under Snapshot this is exactly the implicit tangent-length equation.
  double residual(double tau, double length) const;

 private:
  struct Terms {
    double a = 0, b = 0, da = 0, db = 0;  // A, B and derivatives w.r.t. length
  };
  Terms terms(double tau, double rho_i, double slope_i, double length) const;
  double departure_slope(double tau) const;
  TangentState build(double tau, double length) const;

  Disc from_;
  Disc to_;
  TangentKind kind_;
  MotionLimits limits_;
  Vec2 axis_;
  double dist_ = 0.0;
  double theta_ij_ = 0.0;
};

/// Departure times at which the tangent exists (sorted disjoint pieces).
/// Piece boundaries are located by bisection to `tol`.
std::vector<Interval> tangent_domain(const TangentSolver& solver, int samples = 1024,
                                     double tol = 1e-10);

/// Throw DomainError when the tangent does not exist.
TangentState tangent_length(const TangentSolver& edge, double tau);
Vec2 departure_position(const TangentSolver& edge, double tau);

// ---------------------------------------------------------------------------
// Spiral motion on a growing boundary.

enum class Turn { Cw = -1, Ccw = 1 };
std::string_view to_string(Turn t);

struct SpiralOptions {
  double max_step = 0.01;         // time step cap
  double max_angle_step = 0.02;   // radians of boundary travel per step
  double max_revolutions = 1e9;   // stop after this much travel
  double event_tol = 1e-10;       // crossing localization
};

/// Angular speed on the boundary: sqrt(V^2 - r'^2) / r; nullopt when the
/// robot cannot stay on the boundary (r' >= V or r == 0).
std::optional<double> spiral_rate(const Disc& disc, double t, double v_max);

/// Integrates the boundary angle from (theta0, t0) to t1 (t1 >= t0).
std::optional<double> spiral_angle(const Disc& disc, double theta0, Turn turn, double t0,
                                   double t1, double v_max, double max_step = 0.01);

struct SpiralMeet {
  int target = -1;        // index into the target list
  double time = 0.0;
  double angle = 0.0;     // unwrapped robot angle at the meeting
};

struct SpiralRun {
  std::vector<SpiralMeet> meets;  // first meeting per target, in time order
  std::string stop_reason;        // "revolution", "horizon", "rate", "all-met"
  double end_time = 0.0;
};

/// Moves the robot along the boundary from angle `start_angle` at time tau and
/// reports when it meets each target departure curve.
SpiralRun race_spiral(const Disc& disc, double start_angle, Turn turn, double tau,
                      std::span<const TangentSolver* const> targets, const MotionLimits& limits,
                      const SpiralOptions& options = {});

struct SpiralResult {
  bool met = false;
  double arrival_time = 0.0;
  double end_angle = 0.0;
  std::string reason;  // set when !met
};

/// Single-target spiral; no-meet before the horizon is reported, not thrown.
SpiralResult spiral_traverse(const Disc& disc, double start_angle, Turn turn, double tau,
                             const TangentSolver& target, const MotionLimits& limits,
                             const SpiralOptions& options = {});

// ---------------------------------------------------------------------------
// Robot paths.

enum class LegKind { Tangent, Spiral };

struct Leg {
  LegKind kind = LegKind::Tangent;
  double t_start = 0.0;
  double t_end = 0.0;
  Vec2 from;
  Vec2 to;
  int disc_id = -1;        // spiral legs: disc whose boundary is followed
  Turn turn = Turn::Ccw;   // spiral legs only
  double duration() const { return t_end - t_start; }
};

struct RobotPath {
  std::vector<Leg> legs;
  double arrival_time() const { return legs.empty() ? 0.0 : legs.back().t_end; }
};

Leg tangent_leg(const TangentState& state);
Leg spiral_leg(const Disc& disc, double start_angle, Turn turn, double t_start, double t_end,
               double end_angle);
/// Materializes the tangent leg for (edge, tau); throws DomainError outside the domain.
Leg robot_path(const TangentSolver& edge, double tau);

/// Position along a leg at any time inside it. Spiral positions come from
/// re-integrating the boundary motion from the leg start.
class LegTrack {
 public:
  LegTrack(const Leg& leg, const Disc* disc, double v_max, double max_step = 0.01);
  Vec2 position(double t) const;
  const Leg& leg() const { return leg_; }

 private:
  Leg leg_;
  const Disc* disc_ = nullptr;
  double v_max_ = 1.0;
  double step_ = 0.01;
  std::vector<double> node_t_;
  std::vector<double> node_theta_;
};

}  // namespace gdisc

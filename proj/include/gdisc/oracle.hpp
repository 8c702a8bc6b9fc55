#pragma once

#include <optional>
#include <string>

#include "gdisc/kinematics.hpp"
#include "gdisc/scene.hpp"

namespace gdisc {

struct GridParams {
  double dx = 0.1;
  double dt = 0.0;        // 0: dx / (64 v_max)
  double margin = 3.0;    // bounds = scene box + margin
  int reach = 6;          // move offsets (a, b) with |a|, |b| <= reach, gcd 1
};

/// Default spacing for a scene: 0.05 x (scene diameter / 10), at least 0.02.
GridParams default_grid(const Scene& scene, Vec2 s, Vec2 d);

struct GridResult {
  bool reached = false;
  double arrival_time = 0.0;
  long cells = 0;
  long expanded = 0;
};

/// Earliest arrival over a space-time lattice anchored at s. A lattice point
/// is usable at time t iff its clearance from every disc exceeds dx/2.
/// No waiting moves: obstacles only grow, so arriving later never helps.
GridResult grid_plan(const Scene& scene, Vec2 s, Vec2 d, const GridParams& params);

struct VerifyReport {
  bool ok = true;
  std::string message;
  double max_penetration = 0.0;
  int disc_id = -1;
  double time = 0.0;
};

/// Dense-sampling path check: continuity, constant speed, and penetration of
/// any disc interior by more than eps.
VerifyReport verify_path(const Scene& scene, const RobotPath& path, double eps = 1e-6,
                         double dt = 1e-3);

}  // namespace gdisc

#pragma once

#include <span>

#include "gdisc/kinematics.hpp"
#include "gdisc/scene.hpp"

namespace gdisc {

/// Signed distance from x to the boundary of `disc` at time t; negative inside.
inline double clearance(const Disc& disc, Vec2 x, double t) {
  return distance(x, disc.center()) - disc.radius(t);
}

struct LegClearance {
  double value = 1e300;  // minimum signed clearance over the leg
  double time = 0.0;     // where it is attained
  int disc_id = -1;      // -1 when no disc was checked
};

struct ClearanceOptions {
  int samples = 200;           // uniform samples over the leg, endpoints included
  bool stop_when_negative = false;  // return as soon as penetration is certain
  // Discs whose cheap lower bound on the clearance of a straight leg exceeds
  // this are not sampled; the reported value is then only a lower bound.
  double exact_below = 1e300;
};

/// Minimum signed clearance of a moving leg against `discs`, skipping discs
/// whose ids are in `skip`. Sampling plus golden-section refinement of every
/// sampled local minimum.
LegClearance leg_clearance(const LegTrack& track, std::span<const Disc> discs,
                           std::span<const int> skip = {}, const ClearanceOptions& options = {});

/// Clearance of a leg against a single disc.
LegClearance leg_clearance(const LegTrack& track, const Disc& disc,
                           const ClearanceOptions& options = {});

}  // namespace gdisc

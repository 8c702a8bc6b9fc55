#pragma once

#include <string>
#include <vector>

#include "gdisc/graph.hpp"
#include "gdisc/kinematics.hpp"
#include "gdisc/scene.hpp"

namespace gdisc {

struct RenderOptions {
  std::vector<double> times;          // disc boundaries drawn at each time
  double width = 800.0;               // pixels
  const AdjacencyGraph* steiner = nullptr;  // draw departure points when set
};

/// Snapshot figure: boundaries at each requested time with increasing opacity,
/// the path (spirals sampled at 64 points per leg), optional Steiner points.
std::string render_svg(const Scene& scene, const RobotPath* path, const RenderOptions& options);

}  // namespace gdisc

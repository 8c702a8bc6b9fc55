#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gdisc/geometry.hpp"
#include "gdisc/polynomial.hpp"

namespace gdisc {

/// Radial growth velocity v(t) = sum c_m t^m of a disc.
struct VelocityPoly {
  std::vector<double> coeffs{0.0};

  double operator()(double t) const { return Polynomial(coeffs)(t); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool operator==(const VelocityPoly&) const = default;
};

/// A growing disc: r(t) = v(t) * t + radius0 about a fixed center.
class Disc {
 public:
  Disc() = default;
  Disc(int id, Vec2 center, double radius0, VelocityPoly velocity);

  int id() const { return id_; }
  Vec2 center() const { return center_; }
  double radius0() const { return radius0_; }
  const VelocityPoly& velocity() const { return velocity_; }
  int degree() const { return velocity_.degree(); }

  double radius(double t) const { return radius_(t); }
  /// r'(t) = v(t) + t v'(t).
  double growth_rate(double t) const { return rate_(t); }
  double growth_accel(double t) const { return accel_(t); }
  const Polynomial& radius_poly() const { return radius_; }
  bool is_static() const;
  /// Constant growth velocity (degree 0): r is linear in t.
  bool is_linear() const { return velocity_.degree() == 0; }

  bool operator==(const Disc& o) const {
    return id_ == o.id_ && center_ == o.center_ && radius0_ == o.radius0_ &&
           velocity_ == o.velocity_;
  }

 private:
  int id_ = 0;
  Vec2 center_;
  double radius0_ = 0.0;
  VelocityPoly velocity_;
  Polynomial radius_;
  Polynomial rate_;
  Polynomial accel_;
};

struct Scene {
  std::vector<Disc> discs;
  double v_max = 1.0;
  double horizon = 100.0;

  int size() const { return static_cast<int>(discs.size()); }
  /// Largest velocity degree over all discs, 0 for an empty scene.
  int beta() const;
  /// Index into `discs` for a disc id, -1 if absent.
  int index_of(int id) const;
  const Disc& disc_by_id(int id) const;
  bool operator==(const Scene&) const = default;
};

/// One failed invariant. `disc_ids` names the offending disc(s).
struct Violation {
  std::vector<int> disc_ids;
  std::string rule;
  std::string message;
};

std::vector<Violation> validate_scene(const Scene& scene);

class SceneParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SceneValidationError : public std::runtime_error {
 public:
  explicit SceneValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Parses a scene document and validates it. Throws SceneParseError or
/// SceneValidationError.
Scene load_scene(std::string_view text);
Scene load_scene_file(const std::string& path);
/// Canonical scene document (stable field order, round-trip doubles).
std::string save_scene(const Scene& scene);
/// FNV-1a 64 of the canonical document, as 16 hex digits.
std::string scene_hash(const Scene& scene);

struct RandomSceneOptions {
  int n = 4;
  int beta = 0;
  double v_max = 1.0;
  double horizon = 40.0;
  double extent = 20.0;      // centers in [-extent/2, extent/2]^2
  double min_radius = 0.5;
  double max_radius = 2.0;
  double max_growth = 0.25;  // bound on r'(t) / v_max over the horizon
  double min_gap = 0.5;      // initial clearance between discs
};

/// Random valid scene; deterministic in `seed`. Disc ids are 0..n-1.
Scene random_scene(const RandomSceneOptions& options, std::uint64_t seed);

}  // namespace gdisc

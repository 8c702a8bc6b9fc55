#include "gdisc/clearance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gdisc {

namespace {

constexpr double kGolden = 0.6180339887498949;

// Golden-section minimum of f on [a, b].
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, int iters = 60) {
  double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iters && b - a > 1e-13; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - kGolden * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + kGolden * (b - a); f2 = f(x2);
    }
  }
  return f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

struct Samples {
  std::vector<double> t;
  std::vector<Vec2> x;
};

Samples sample_leg(const LegTrack& track, int n) {
  const Leg& leg = track.leg();
  Samples s;
  n = std::max(n, 2);
  s.t.resize(n + 1);
  s.x.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    s.t[k] = k == n ? leg.t_end : leg.t_start + (leg.t_end - leg.t_start) * k / n;
    s.x[k] = track.position(s.t[k]);
  }
  return s;
}

LegClearance against(const LegTrack& track, const Samples& s, const Disc& disc) {
  LegClearance best;
  best.disc_id = disc.id();
  const std::size_t n = s.t.size();
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = clearance(disc, s.x[k], s.t[k]);
  for (std::size_t k = 0; k < n; ++k) {
    if (c[k] < best.value) {
      best.value = c[k];
      best.time = s.t[k];
    }
  }
  auto f = [&](double t) { return clearance(disc, track.position(t), t); };
  for (std::size_t k = 0; k < n; ++k) {
    const bool left_ok = k == 0 || c[k] <= c[k - 1];
    const bool right_ok = k + 1 == n || c[k] <= c[k + 1];
    if (!left_ok || !right_ok) continue;
    const double a = s.t[k == 0 ? 0 : k - 1];
    const double b = s.t[k + 1 == n ? k : k + 1];
    if (b <= a) continue;
    auto [t, v] = golden_min(f, a, b);
    if (v < best.value) {
      best.value = v;
      best.time = t;
    }
  }
  return best;
}

// Distance from the disc center to the segment minus the final radius.
double lower_bound(const Leg& leg, const Disc& disc) {
  const Vec2 d = leg.to - leg.from;
  const double len2 = dot(d, d);
  double u = len2 > 0.0 ? dot(disc.center() - leg.from, d) / len2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  return distance(leg.from + d * u, disc.center()) - disc.radius(leg.t_end);
}

}  // namespace

LegClearance leg_clearance(const LegTrack& track, std::span<const Disc> discs,
                           std::span<const int> skip, const ClearanceOptions& options) {
  LegClearance best;
  if (discs.empty()) return best;
  const bool straight = track.leg().kind == LegKind::Tangent;
  Samples s;
  for (const Disc& d : discs) {
    if (std::find(skip.begin(), skip.end(), d.id()) != skip.end()) continue;
    LegClearance c;
    const double bound = straight ? lower_bound(track.leg(), d) : -1.0;
    if (bound > options.exact_below) {
      c.value = bound;
      c.disc_id = d.id();
    } else {
      if (s.t.empty()) s = sample_leg(track, options.samples);
      c = against(track, s, d);
    }
    if (c.value < best.value) best = c;
    if (options.stop_when_negative && best.value < 0.0) break;
  }
  return best;
}

LegClearance leg_clearance(const LegTrack& track, const Disc& disc,
                           const ClearanceOptions& options) {
  return against(track, sample_leg(track, options.samples), disc);
}

}  // namespace gdisc

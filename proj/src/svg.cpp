#include "gdisc/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace gdisc {

namespace {

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

}  // namespace

std::string render_svg(const Scene& scene, const RobotPath* path, const RenderOptions& opt) {
  const double t_max = opt.times.empty() ? 0.0 : *std::max_element(opt.times.begin(), opt.times.end());
  double x0 = -1, y0 = -1, x1 = 1, y1 = 1;
  auto grow = [&](Vec2 p, double r) {
    x0 = std::min(x0, p.x - r); y0 = std::min(y0, p.y - r);
    x1 = std::max(x1, p.x + r); y1 = std::max(y1, p.y + r);
  };
  for (const Disc& d : scene.discs) grow(d.center(), d.radius(std::min(t_max, scene.horizon)));
  if (path)
    for (const Leg& l : path->legs) { grow(l.from, 0.5); grow(l.to, 0.5); }
  const double span = std::max(x1 - x0, y1 - y0);
  const double scale = opt.width / span;
  const double height = (y1 - y0) * scale;
  // SVG y grows downward.
  auto X = [&](double x) { return fmt("%.3f", (x - x0) * scale); };
  auto Y = [&](double y) { return fmt("%.3f", (y1 - y) * scale); };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", opt.width) +
                  "\" height=\"" + fmt("%.0f", height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::vector<double> times = opt.times;
  std::sort(times.begin(), times.end());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double opacity = 0.25 + 0.75 * (k + 1) / times.size();
    s += "<g stroke=\"#1f4e8c\" fill=\"none\" stroke-opacity=\"" + fmt("%.3f", opacity) +
         "\" data-t=\"" + fmt("%g", times[k]) + "\">\n";
    for (const Disc& d : scene.discs) {
      s += "  <circle cx=\"" + X(d.center().x) + "\" cy=\"" + Y(d.center().y) + "\" r=\"" +
           fmt("%.3f", d.radius(times[k]) * scale) + "\"/>\n";
    }
    s += "</g>\n";
    if (opt.steiner) {
      s += "<g fill=\"#c0392b\" fill-opacity=\"" + fmt("%.3f", opacity) + "\">\n";
      for (const TangentEdge& e : opt.steiner->edges)
        if (auto st = e.solver.solve(times[k]))
          s += "  <circle cx=\"" + X(st->from.x) + "\" cy=\"" + Y(st->from.y) + "\" r=\"2\"/>\n";
      s += "</g>\n";
    }
  }

  if (path && !path->legs.empty()) {
    s += "<polyline fill=\"none\" stroke=\"#d35400\" stroke-width=\"2\" points=\"";
    for (const Leg& leg : path->legs) {
      const Disc* ride = nullptr;
      if (leg.kind == LegKind::Spiral) {
        const int k = scene.index_of(leg.disc_id);
        if (k >= 0) ride = &scene.discs[k];
      }
      const int samples = ride ? 64 : 1;
      const LegTrack track(leg, ride, scene.v_max);
      for (int m = 0; m <= samples; ++m) {
        const double t = leg.t_start + leg.duration() * m / samples;
        const Vec2 p = ride ? track.position(t) : (m == 0 ? leg.from : leg.to);
        s += X(p.x) + "," + Y(p.y) + " ";
      }
    }
    s += "\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace gdisc

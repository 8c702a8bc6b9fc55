#include "gdisc/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gdisc {

using nlohmann::json;

Disc::Disc(int id, Vec2 center, double radius0, VelocityPoly velocity)
    : id_(id), center_(center), radius0_(radius0), velocity_(std::move(velocity)) {
  if (velocity_.coeffs.empty()) velocity_.coeffs.push_back(0.0);
  radius_ = Polynomial(velocity_.coeffs).times_t_plus(radius0_);
  rate_ = radius_.derivative();
  accel_ = rate_.derivative();
}

bool Disc::is_static() const {
  return std::all_of(velocity_.coeffs.begin(), velocity_.coeffs.end(),
                     [](double c) { return c == 0.0; });
}

int Scene::beta() const {
  int b = 0;
  for (const auto& d : discs) b = std::max(b, d.degree());
  return b;
}

int Scene::index_of(int id) const {
  for (int k = 0; k < size(); ++k)
    if (discs[k].id() == id) return k;
  return -1;
}

const Disc& Scene::disc_by_id(int id) const {
  int k = index_of(id);
  if (k < 0) throw std::out_of_range("no disc with id " + std::to_string(id));
  return discs[k];
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Maximum of p on [0, h] over endpoints and critical points, plus a dense grid.
double poly_max(const Polynomial& p, double h) {
  double best = std::max(p(0.0), p(h));
  for (double c : real_roots_in(p.derivative(), 0.0, h)) best = std::max(best, p(c));
  constexpr int kGrid = 10000;
  for (int k = 0; k <= kGrid; ++k) best = std::max(best, p(h * k / kGrid));
  return best;
}

double poly_min(const Polynomial& p, double h) {
  std::vector<double> neg(p.coeffs().begin(), p.coeffs().end());
  for (double& c : neg) c = -c;
  return -poly_max(Polynomial(neg), h);
}

}  // namespace

std::vector<Violation> validate_scene(const Scene& scene) {
  std::vector<Violation> out;
  if (!(scene.v_max > 0.0) || !std::isfinite(scene.v_max))
    out.push_back({{}, "v_max", "v_max must be a positive finite number"});
  if (!(scene.horizon > 0.0) || !std::isfinite(scene.horizon))
    out.push_back({{}, "horizon", "horizon must be a positive finite number"});
  if (!out.empty()) return out;

  std::set<int> seen;
  for (const auto& d : scene.discs) {
    const int id = d.id();
    if (!seen.insert(id).second)
      out.push_back({{id}, "duplicate-id", "disc " + std::to_string(id) + ": duplicate id"});
    bool finite = std::isfinite(d.center().x) && std::isfinite(d.center().y) &&
                  std::isfinite(d.radius0());
    for (double c : d.velocity().coeffs) finite = finite && std::isfinite(c);
    if (!finite) {
      out.push_back({{id}, "non-finite", "disc " + std::to_string(id) + ": non-finite value"});
      continue;
    }
    if (d.radius0() < 0.0)
      out.push_back({{id}, "negative-radius", "disc " + std::to_string(id) + ": radius0 < 0"});

    const Polynomial v(d.velocity().coeffs);
    const double h = scene.horizon;
    if (poly_max(v, h) >= scene.v_max)
      out.push_back({{id}, "velocity-exceeds-vmax",
                     "disc " + std::to_string(id) + ": velocity exceeds v_max"});
    if (poly_min(v, h) < 0.0)
      out.push_back({{id}, "negative-velocity",
                     "disc " + std::to_string(id) + ": velocity is negative"});
    if (poly_min(d.radius_poly().derivative(), h) < 0.0)
      out.push_back({{id}, "shrinking-radius",
                     "disc " + std::to_string(id) + ": radius decreases"});
  }

  for (int a = 0; a < scene.size(); ++a) {
    for (int b = a + 1; b < scene.size(); ++b) {
      const Disc& da = scene.discs[a];
      const Disc& db = scene.discs[b];
      const double gap = distance(da.center(), db.center()) - da.radius0() - db.radius0();
      // Touching boundaries are allowed; open interiors must be disjoint.
      if (gap < -1e-12 * std::max(1.0, da.radius0() + db.radius0()))
        out.push_back({{da.id(), db.id()}, "initial-overlap",
                       "discs " + std::to_string(da.id()) + " and " + std::to_string(db.id()) +
                           ": initial overlap"});
    }
  }
  return out;
}

SceneValidationError::SceneValidationError(std::vector<Violation> violations)
    : std::runtime_error([&] {
        std::string msg = "scene validation failed:";
        for (const auto& v : violations) msg += "\n  " + v.message;
        return msg;
      }()),
      violations_(std::move(violations)) {}

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw SceneParseError(where + ": unknown field \"" + key + "\"");
  }
}

double get_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw SceneParseError(where + ": missing field \"" + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number()) throw SceneParseError(where + ": field \"" + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

Scene load_scene(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SceneParseError(std::string("malformed scene document: ") + e.what());
  }
  if (!doc.is_object()) throw SceneParseError("scene document must be an object");
  reject_unknown(doc, {"v_max", "horizon", "discs"}, "scene");

  Scene scene;
  scene.v_max = get_number(doc, "v_max", "scene");
  scene.horizon = get_number(doc, "horizon", "scene");
  if (!doc.contains("discs") || !doc["discs"].is_array())
    throw SceneParseError("scene: field \"discs\" must be an array");

  int pos = 0;
  for (const json& jd : doc["discs"]) {
    const std::string where = "discs[" + std::to_string(pos++) + "]";
    if (!jd.is_object()) throw SceneParseError(where + ": must be an object");
    reject_unknown(jd, {"id", "center", "radius0", "velocity_coeffs"}, where);
    if (!jd.contains("id") || !jd["id"].is_number_integer())
      throw SceneParseError(where + ": field \"id\" must be an integer");
    const int id = jd["id"].get<int>();
    const std::string dwhere = "disc " + std::to_string(id);
    if (!jd.contains("center") || !jd["center"].is_array() || jd["center"].size() != 2 ||
        !jd["center"][0].is_number() || !jd["center"][1].is_number())
      throw SceneParseError(dwhere + ": field \"center\" must be [x, y]");
    const double r0 = get_number(jd, "radius0", dwhere);
    if (!jd.contains("velocity_coeffs") || !jd["velocity_coeffs"].is_array() ||
        jd["velocity_coeffs"].empty())
      throw SceneParseError(dwhere + ": field \"velocity_coeffs\" must be a non-empty array");
    VelocityPoly vel;
    vel.coeffs.clear();
    for (const json& c : jd["velocity_coeffs"]) {
      if (!c.is_number())
        throw SceneParseError(dwhere + ": velocity_coeffs entries must be numbers");
      vel.coeffs.push_back(c.get<double>());
    }
    scene.discs.emplace_back(id, Vec2{jd["center"][0].get<double>(), jd["center"][1].get<double>()},
                             r0, std::move(vel));
  }

  auto violations = validate_scene(scene);
  if (!violations.empty()) throw SceneValidationError(std::move(violations));
  return scene;
}

Scene load_scene_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scene(ss.str());
}

std::string save_scene(const Scene& scene) {
  // Hand-formatted so the byte layout is stable and independent of locale.
  std::string s = "{\n  \"v_max\": " + num(scene.v_max) + ",\n  \"horizon\": " +
                  num(scene.horizon) + ",\n  \"discs\": [";
  for (std::size_t k = 0; k < scene.discs.size(); ++k) {
    const Disc& d = scene.discs[k];
    s += k ? ",\n    " : "\n    ";
    s += "{\"id\": " + std::to_string(d.id()) + ", \"center\": [" + num(d.center().x) + ", " +
         num(d.center().y) + "], \"radius0\": " + num(d.radius0()) + ", \"velocity_coeffs\": [";
    for (std::size_t m = 0; m < d.velocity().coeffs.size(); ++m)
      s += (m ? ", " : "") + num(d.velocity().coeffs[m]);
    s += "]}";
  }
  s += scene.discs.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return s;
}

std::string scene_hash(const Scene& scene) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : save_scene(scene)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Scene random_scene(const RandomSceneOptions& opt, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Scene scene;
  scene.v_max = opt.v_max;
  scene.horizon = opt.horizon;

  int attempts = 0;
  while (scene.size() < opt.n && attempts < 100000) {
    ++attempts;
    const Vec2 c{(unit(rng) - 0.5) * opt.extent, (unit(rng) - 0.5) * opt.extent};
    const double r0 = opt.min_radius + unit(rng) * (opt.max_radius - opt.min_radius);
    bool clear = true;
    for (const auto& d : scene.discs)
      clear = clear && distance(c, d.center()) >= r0 + d.radius0() + opt.min_gap;
    if (!clear) continue;

    // Nonnegative coefficients keep v >= 0 and r' >= 0; scale so that
    // r'(horizon) = g * max_growth * v_max with g in [0.2, 1].
    std::vector<double> w(opt.beta + 1);
    for (double& x : w) x = 0.1 + unit(rng);
    double rate_at_h = 0.0;
    for (int m = 0; m <= opt.beta; ++m)
      rate_at_h += (m + 1) * w[m] * std::pow(opt.horizon, m);
    const double g = 0.2 + 0.8 * unit(rng);
    const double scale = g * opt.max_growth * opt.v_max / rate_at_h;
    VelocityPoly vel;
    vel.coeffs.clear();
    for (double x : w) vel.coeffs.push_back(x * scale);
    scene.discs.emplace_back(scene.size(), c, r0, std::move(vel));
  }
  return scene;
}

}  // namespace gdisc

// Command-line driver: preprocess, query, verify, oracle, render, bench.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gdisc/arrangement.hpp"
#include "gdisc/domination.hpp"
#include "gdisc/index.hpp"
#include "gdisc/oracle.hpp"
#include "gdisc/path_io.hpp"
#include "gdisc/planner.hpp"
#include "gdisc/scene.hpp"
#include "gdisc/svg.hpp"

using namespace gdisc;

namespace {

enum Exit : int {
  kOk = 0,
  kFail = 1,
  kInvalidScene = 2,
  kIo = 3,
  kUnreachable = 4,
  kStaleIndex = 5,
  kEndpointBlocked = 6,
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

Vec2 parse_point(const std::string& s) {
  std::istringstream in(s);
  in.imbue(std::locale::classic());
  Vec2 p;
  char comma = 0;
  if (!(in >> p.x >> comma >> p.y) || comma != ',' || !in.eof())
    throw CLI::ValidationError("expected X,Y but got '" + s + "'");
  return p;
}

std::vector<double> parse_times(const std::string& s) {
  std::vector<double> out;
  std::istringstream in(s);
  in.imbue(std::locale::classic());
  std::string item;
  while (std::getline(in, item, ',')) {
    std::istringstream one(item);
    one.imbue(std::locale::classic());
    double t;
    if (!(one >> t) || !one.eof() || t < 0.0)
      throw CLI::ValidationError("--times: '" + item + "' is not a nonnegative number");
    out.push_back(t);
  }
  if (out.empty()) throw CLI::ValidationError("--times: empty list");
  return out;
}

// Loads a scene, mapping failures to the preprocess exit codes.
Scene scene_or_exit(const std::string& path, int& code) {
  try {
    return load_scene(read_file(path));
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kIo;
  } catch (const SceneValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kInvalidScene;
  } catch (const SceneParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kInvalidScene;
  }
  return {};
}

std::string dump_events(const Preprocessed& pre) {
  std::string out;
  char buf[256];
  const auto& g = pre.graph;
  for (const auto& seq : pre.intersections.sequences)
    for (const auto& ev : seq.events) {
      if (ev.edge > ev.other) continue;  // each point once
      std::snprintf(buf, sizeof buf, "%d %.17g %d %d %.17g %.17g\n",
                    g.scene.discs[g.edges[ev.edge].from].id(), ev.time, ev.edge, ev.other,
                    ev.position.x, ev.position.y);
      out += buf;
    }
  return out;
}

int cmd_preprocess(const std::string& scene_path, const std::string& out_path,
                   const std::string& events_path) {
  int code = kOk;
  Scene scene = scene_or_exit(scene_path, code);
  if (code != kOk) return code;
  const Preprocessed pre = preprocess(scene);
  try {
    write_file(out_path, save_index(pre));
    if (!events_path.empty()) write_file(events_path, dump_events(pre));
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  long intervals = 0;
  for (const auto& s : pre.blocked.sequences) intervals += static_cast<long>(s.intervals.size());
  std::printf("n=%d edges=%zu k=%ld intervals=%ld\n", scene.size(), pre.graph.edges.size(),
              pre.intersections.k, intervals);
  return kOk;
}

int cmd_query(const std::string& index_path, const std::string& scene_path, Vec2 from, Vec2 to,
              const std::string& out_path) {
  int code = kOk;
  Scene scene = scene_or_exit(scene_path, code);
  if (code != kOk) return code;
  Preprocessed pre;
  try {
    pre = load_index(read_file(index_path), scene);
  } catch (const StaleIndexError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kStaleIndex;
  } catch (const IndexError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }

  QueryResult result;
  try {
    result = query(pre, from, to);
  } catch (const EndpointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEndpointBlocked;
  }
  if (!out_path.empty()) {
    try {
      write_file(out_path, path_to_json(result));
    } catch (const IoError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kIo;
    }
  }
  if (result.status != QueryStatus::Found) {
    std::printf("%s\n", std::string(to_string(result.status)).c_str());
    return kUnreachable;
  }
  std::printf("%.10g\n", result.arrival_time);
  if (result.diagnostics.grazing)
    std::fprintf(stderr, "note: path grazes an obstacle (min clearance %.3g)\n",
                 result.diagnostics.min_clearance);
  return kOk;
}

int cmd_verify(const std::string& scene_path, const std::string& path_path, double eps,
               double dt) {
  int code = kOk;
  Scene scene = scene_or_exit(scene_path, code);
  if (code != kOk) return code;
  PathDocument doc;
  try {
    doc = parse_path(read_file(path_path));
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const PathParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  const VerifyReport rep = verify_path(scene, doc.path, eps, dt);
  if (rep.ok) {
    std::printf("pass (max penetration %.3g)\n", rep.max_penetration);
    return kOk;
  }
  std::printf("fail: %s\n", rep.message.c_str());
  return kFail;
}

int cmd_oracle(const std::string& scene_path, Vec2 from, Vec2 to, double dx, double dt) {
  int code = kOk;
  Scene scene = scene_or_exit(scene_path, code);
  if (code != kOk) return code;
  GridParams p = default_grid(scene, from, to);
  if (dx > 0.0) p.dx = dx;
  if (dt > 0.0) p.dt = dt;
  const GridResult r = grid_plan(scene, from, to, p);
  if (!r.reached) {
    std::printf("unreachable\n");
    return kUnreachable;
  }
  std::printf("%.10g\n", r.arrival_time);
  return kOk;
}

int cmd_render(const std::string& scene_path, const std::string& path_path,
               const std::vector<double>& times, const std::string& out_path, bool steiner) {
  int code = kOk;
  Scene scene = scene_or_exit(scene_path, code);
  if (code != kOk) return code;
  RobotPath path;
  try {
    if (!path_path.empty()) path = parse_path(read_file(path_path)).path;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  RenderOptions opt;
  opt.times = times;
  AdjacencyGraph graph;
  if (steiner) {
    graph = build_graph(scene);
    opt.steiner = &graph;
  }
  try {
    write_file(out_path, render_svg(scene, path_path.empty() ? nullptr : &path, opt));
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}

int cmd_bench(int n, int beta, std::uint64_t seed, int queries) {
  using clock = std::chrono::steady_clock;
  RandomSceneOptions opt;
  opt.n = n;
  opt.beta = beta;
  const Scene scene = random_scene(opt, seed);

  const auto t0 = clock::now();
  const Preprocessed pre = preprocess(scene);
  const double prep_s = std::chrono::duration<double>(clock::now() - t0).count();

  // Largest root count of any curve pair against the degree bound.
  std::map<std::pair<int, int>, int> per_pair;
  for (const auto& seq : pre.intersections.sequences)
    for (const auto& ev : seq.events)
      if (ev.edge < ev.other) ++per_pair[{ev.edge, ev.other}];
  int worst = 0;
  for (const auto& [_, c] : per_pair) worst = std::max(worst, c);
  const int bound = 16 * scene.beta() + 8;

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> coord(-opt.extent / 2 - 2, opt.extent / 2 + 2);
  auto free_point = [&] {
    for (;;) {
      const Vec2 p{coord(rng), coord(rng)};
      if (first_hit(scene, p).hit_time > 0.5) return p;
    }
  };
  int found = 0;
  double query_s = 0.0;
  for (int q = 0; q < queries; ++q) {
    const Vec2 s = free_point(), d = free_point();
    const auto t1 = clock::now();
    const QueryResult r = query(pre, s, d);
    query_s += std::chrono::duration<double>(clock::now() - t1).count();
    found += r.status == QueryStatus::Found;
  }
  std::printf(
      "n=%d beta=%d seed=%llu edges=%zu k=%ld preprocess=%.3fs queries=%d found=%d "
      "query_avg=%.3fs max_pair_roots=%d bound=%d %s\n",
      scene.size(), scene.beta(), static_cast<unsigned long long>(seed), pre.graph.edges.size(),
      pre.intersections.k, prep_s, queries, found, queries ? query_s / queries : 0.0, worst,
      bound, worst <= bound ? "within-bound" : "BOUND-EXCEEDED");
  return worst <= bound ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-minimal paths among growing discs"};
  app.require_subcommand(1);
  int code = kOk;

  std::string scene_path, index_path, out_path, path_path, events_path, from_s, to_s, times_s;
  double eps = 1e-6, dt = 1e-3, dx = 0.0, grid_dt = 0.0;
  int n = 4, beta = 0, queries = 0;
  std::uint64_t seed = 1;
  bool steiner = false;

  auto* pre = app.add_subcommand("preprocess", "build the preprocessing index");
  pre->add_option("scene", scene_path, "scene document")->required();
  pre->add_option("-o,--out", index_path, "index file")->required();
  pre->add_option("--dump-events", events_path, "write intersection events as text");
  pre->callback([&] { code = cmd_preprocess(scene_path, index_path, events_path); });

  auto* qry = app.add_subcommand("query", "time-minimal path between two points");
  qry->add_option("index", index_path, "index file")->required();
  qry->add_option("scene", scene_path, "scene document")->required();
  qry->add_option("--from", from_s, "source X,Y")->required();
  qry->add_option("--to", to_s, "destination X,Y")->required();
  qry->add_option("--out", out_path, "path document to write");
  qry->callback([&] {
    code = cmd_query(index_path, scene_path, parse_point(from_s), parse_point(to_s), out_path);
  });

  auto* ver = app.add_subcommand("verify", "check a path document against a scene");
  ver->add_option("scene", scene_path, "scene document")->required();
  ver->add_option("path", path_path, "path document")->required();
  ver->add_option("--eps", eps, "penetration tolerance");
  ver->add_option("--dt", dt, "sampling step");
  ver->callback([&] { code = cmd_verify(scene_path, path_path, eps, dt); });

  auto* orc = app.add_subcommand("oracle", "grid approximation of the earliest arrival");
  orc->add_option("scene", scene_path, "scene document")->required();
  orc->add_option("--from", from_s, "source X,Y")->required();
  orc->add_option("--to", to_s, "destination X,Y")->required();
  orc->add_option("--dx", dx, "lattice spacing");
  orc->add_option("--dt", grid_dt, "time step");
  orc->callback([&] {
    code = cmd_oracle(scene_path, parse_point(from_s), parse_point(to_s), dx, grid_dt);
  });

  auto* ren = app.add_subcommand("render", "SVG snapshot of a scene and optional path");
  ren->add_option("scene", scene_path, "scene document")->required();
  ren->add_option("path", path_path, "path document");
  ren->add_option("--times", times_s, "comma-separated times")->required();
  ren->add_option("-o,--out", out_path, "SVG file")->required();
  ren->add_flag("--steiner", steiner, "mark departure Steiner points");
  ren->callback([&] { code = cmd_render(scene_path, path_path, parse_times(times_s), out_path, steiner); });

  auto* ben = app.add_subcommand("bench", "time preprocessing and queries on random scenes");
  ben->add_option("--n", n, "disc count")->check(CLI::NonNegativeNumber);
  ben->add_option("--beta", beta, "velocity degree")->check(CLI::Range(0, 4));
  ben->add_option("--seed", seed, "random seed");
  ben->add_option("--queries", queries, "number of queries")->check(CLI::NonNegativeNumber);
  ben->callback([&] { code = cmd_bench(n, beta, seed, queries); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  return code;
}

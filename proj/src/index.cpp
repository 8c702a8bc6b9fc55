#include "gdisc/index.hpp"

#include <json.hpp>

namespace gdisc {

using ordered = nlohmann::ordered_json;

std::string save_index(const Preprocessed& pre) {
  const AdjacencyGraph& g = pre.graph;
  ordered doc;
  doc["format"] = "gdisc-index";
  doc["version"] = kIndexVersion;
  doc["scene_hash"] = scene_hash(g.scene);
  doc["model"] = std::string(to_string(g.limits.model));
  doc["n"] = g.scene.size();
  doc["k"] = pre.intersections.k;

  ordered edges = ordered::array();
  for (const TangentEdge& e : g.edges) {
    ordered dom = ordered::array();
    for (const Interval& iv : e.domain) dom.push_back({iv.lo, iv.hi});
    edges.push_back({{"id", e.id},
                     {"from", g.scene.discs[e.from].id()},
                     {"to", g.scene.discs[e.to].id()},
                     {"kind", std::string(to_string(e.kind))},
                     {"domain", std::move(dom)}});
  }
  doc["edges"] = std::move(edges);

  const SweepStats& ss = pre.intersections.stats;
  doc["sweep"] = {{"events", ss.events},         {"touching", ss.touching},
                  {"pair_solves", ss.pair_solves}, {"late_roots", ss.late_roots},
                  {"reorders", ss.reorders}};
  ordered seqs = ordered::array();
  for (const IntersectionSequence& s : pre.intersections.sequences) {
    ordered ev = ordered::array();
    for (const IntersectionEvent& e : s.events)
      ev.push_back({e.time, e.other, e.touching, e.position.x, e.position.y});
    seqs.push_back({{"edge", s.edge}, {"events", std::move(ev)}});
  }
  doc["intersections"] = std::move(seqs);

  const BlockedStats& bs = pre.blocked.stats;
  doc["blocked_stats"] = {{"alignment_events", bs.alignment_events},
                          {"contact_events", bs.contact_events},
                          {"toggle_mismatches", bs.toggle_mismatches},
                          {"intervals", bs.intervals}};
  ordered blocked = ordered::array();
  for (const BlockedSequence& s : pre.blocked.sequences) {
    ordered iv = ordered::array();
    for (const BlockedInterval& b : s.intervals)
      iv.push_back({b.lo, b.hi, std::string(to_string(b.lo_kind)),
                    std::string(to_string(b.hi_kind))});
    blocked.push_back({{"edge", s.edge}, {"intervals", std::move(iv)}});
  }
  doc["blocked"] = std::move(blocked);
  return doc.dump(1) + "\n";
}

Preprocessed load_index(std::string_view text, const Scene& scene) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IndexError(std::string("malformed index: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "gdisc-index")
      throw IndexError("not a gdisc index");
    const int version = doc.at("version").get<int>();
    if (version != kIndexVersion)
      throw IndexError("unsupported index version " + std::to_string(version) + " (expected " +
                       std::to_string(kIndexVersion) + ")");
    if (doc.at("scene_hash").get<std::string>() != scene_hash(scene))
      throw StaleIndexError("index was built for a different scene");

    Preprocessed pre;
    AdjacencyGraph& g = pre.graph;
    g.scene = scene;
    g.limits = {scene.v_max, scene.horizon,
                parse_tangent_model(doc.at("model").get<std::string>())};
    const int n = scene.size();
    g.departing.assign(n, {});
    g.arriving.assign(n, {});
    for (const auto& je : doc.at("edges")) {
      const int id = je.at("id").get<int>();
      if (id != static_cast<int>(g.edges.size())) throw IndexError("edge ids out of order");
      const int from = scene.index_of(je.at("from").get<int>());
      const int to = scene.index_of(je.at("to").get<int>());
      if (from < 0 || to < 0) throw IndexError("edge references an unknown disc");
      const TangentKind kind = parse_tangent_kind(je.at("kind").get<std::string>());
      TangentEdge e{id, from, to, kind,
                    TangentSolver(scene.discs[from], scene.discs[to], kind, g.limits), {}};
      for (const auto& iv : je.at("domain"))
        e.domain.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
      g.edges.push_back(std::move(e));
      g.departing[from].push_back(id);
      g.arriving[to].push_back(id);
    }

    const auto& js = doc.at("sweep");
    pre.intersections.k = doc.at("k").get<long>();
    pre.intersections.stats = {js.at("events").get<long>(), js.at("touching").get<long>(),
                               js.at("pair_solves").get<long>(), js.at("late_roots").get<long>(),
                               js.at("reorders").get<long>()};
    for (const auto& jq : doc.at("intersections")) {
      IntersectionSequence s;
      s.edge = jq.at("edge").get<int>();
      for (const auto& ev : jq.at("events"))
        s.events.push_back({ev.at(0).get<double>(), s.edge, ev.at(1).get<int>(),
                            {ev.at(3).get<double>(), ev.at(4).get<double>()},
                            ev.at(2).get<bool>()});
      pre.intersections.sequences.push_back(std::move(s));
    }

    const auto& jb = doc.at("blocked_stats");
    pre.blocked.stats = {jb.at("alignment_events").get<long>(), jb.at("contact_events").get<long>(),
                         jb.at("toggle_mismatches").get<long>(), jb.at("intervals").get<long>()};
    for (const auto& jq : doc.at("blocked")) {
      BlockedSequence s;
      s.edge = jq.at("edge").get<int>();
      for (const auto& iv : jq.at("intervals"))
        s.intervals.push_back({iv.at(0).get<double>(), iv.at(1).get<double>(),
                               parse_breakpoint(iv.at(2).get<std::string>()),
                               parse_breakpoint(iv.at(3).get<std::string>())});
      pre.blocked.sequences.push_back(std::move(s));
    }
    const std::size_t m = g.edges.size();
    if (pre.intersections.sequences.size() != m || pre.blocked.sequences.size() != m)
      throw IndexError("index sections disagree on the edge count");
    return pre;
  } catch (const nlohmann::json::exception& e) {
    throw IndexError(std::string("invalid index: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IndexError(std::string("invalid index: ") + e.what());
  }
}

}  // namespace gdisc

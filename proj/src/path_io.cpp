#include "gdisc/path_io.hpp"

#include <json.hpp>

namespace gdisc {

using ordered = nlohmann::ordered_json;

std::string path_to_json(const PathDocument& doc) {
  ordered out;
  out["status"] = doc.status;
  out["arrival_time"] = doc.arrival_time;
  out["legs"] = ordered::array();
  for (const Leg& leg : doc.path.legs) {
    ordered j;
    const bool spiral = leg.kind == LegKind::Spiral;
    j["kind"] = spiral ? "spiral" : "tangent";
    j["t_start"] = leg.t_start;
    j["t_end"] = leg.t_end;
    j["from"] = {leg.from.x, leg.from.y};
    j["to"] = {leg.to.x, leg.to.y};
    j["disc_id"] = spiral ? ordered(leg.disc_id) : ordered(nullptr);
    j["direction"] = spiral ? ordered(std::string(to_string(leg.turn))) : ordered(nullptr);
    out["legs"].push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::string path_to_json(const QueryResult& result) {
  PathDocument doc;
  doc.status = std::string(to_string(result.status));
  doc.arrival_time = result.status == QueryStatus::Found ? result.arrival_time : 0.0;
  doc.path = result.path;
  return path_to_json(doc);
}

namespace {

Vec2 point(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw PathParseError(std::string("leg field \"") + what + "\" must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

PathDocument parse_path(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PathParseError(std::string("malformed path document: ") + e.what());
  }
  PathDocument out;
  try {
    out.status = doc.at("status").get<std::string>();
    out.arrival_time = doc.at("arrival_time").get<double>();
    for (const auto& j : doc.at("legs")) {
      Leg leg;
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "tangent") {
        leg.kind = LegKind::Tangent;
      } else if (kind == "spiral") {
        leg.kind = LegKind::Spiral;
        leg.disc_id = j.at("disc_id").get<int>();
        const std::string dir = j.at("direction").get<std::string>();
        if (dir != "cw" && dir != "ccw") throw PathParseError("direction must be cw or ccw");
        leg.turn = dir == "cw" ? Turn::Cw : Turn::Ccw;
      } else {
        throw PathParseError("unknown leg kind \"" + kind + "\"");
      }
      leg.t_start = j.at("t_start").get<double>();
      leg.t_end = j.at("t_end").get<double>();
      leg.from = point(j.at("from"), "from");
      leg.to = point(j.at("to"), "to");
      out.path.legs.push_back(leg);
    }
  } catch (const nlohmann::json::exception& e) {
    throw PathParseError(std::string("invalid path document: ") + e.what());
  }
  return out;
}

}  // namespace gdisc

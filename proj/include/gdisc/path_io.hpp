#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "gdisc/kinematics.hpp"
#include "gdisc/planner.hpp"

namespace gdisc {

class PathParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PathDocument {
  std::string status;
  double arrival_time = 0.0;
  RobotPath path;
};

std::string path_to_json(const QueryResult& result);
std::string path_to_json(const PathDocument& doc);
PathDocument parse_path(std::string_view text);

}  // namespace gdisc

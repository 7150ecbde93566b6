#pragma once

// JSON input for diagrams. Accepted forms:
//   {"pd": [[a,b,c,d], ...]}
//   {"rotation": [[...], ...], "over_under": ["uouo" | "ouou", ...]}
//   [[a,b,c,d], ...]  (bare PD code)

#include <fstream>
#include <sstream>
#include <string>

#include "cuspcubes/diagram.hpp"
#include "json.hpp"

namespace cuspcubes {

using json = nlohmann::json;

namespace detail {

inline std::vector<std::array<int, 4>> quads(const json& j, const char* what) {
  require(j.is_array(), std::string(what) + " must be an array of 4-tuples");
  std::vector<std::array<int, 4>> out;
  for (const auto& x : j) {
    require(x.is_array() && x.size() == 4, std::string(what) + " entries must have exactly 4 labels");
    std::array<int, 4> q{};
    for (int k = 0; k < 4; ++k) {
      require(x[k].is_number_integer(), std::string(what) + " labels must be integers");
      q[k] = x[k].get<int>();
    }
    out.push_back(q);
  }
  return out;
}

}  // namespace detail

inline AlternatingDiagram diagram_from_json(const json& j) {
  if (j.is_array()) return parse_pd(detail::quads(j, "pd"));
  detail::require(j.is_object(), "diagram JSON must be an object or a PD array");
  if (j.contains("pd")) return parse_pd(detail::quads(j["pd"], "pd"));
  if (j.contains("rotation")) {
    detail::require(j.contains("over_under") && j["over_under"].is_array(), "rotation form needs an over_under array");
    std::vector<std::string> ou;
    for (const auto& s : j["over_under"]) {
      detail::require(s.is_string(), "over_under entries must be strings");
      ou.push_back(s.get<std::string>());
    }
    return from_rotation_pattern(detail::quads(j["rotation"], "rotation"), ou);
  }
  throw invalid_input("diagram JSON needs a \"pd\" or \"rotation\" key");
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw invalid_input(path + ": " + e.what());
  }
}

inline AlternatingDiagram load_diagram(const std::string& path) {
  try {
    return diagram_from_json(read_json_file(path));
  } catch (const invalid_input& e) {
    std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw invalid_input(path + ": " + msg);
  }
}

inline json pd_to_json(const AlternatingDiagram& d) {
  json pd = json::array();
  for (const auto& x : d.to_pd()) pd.push_back(x);
  return json{{"pd", pd}};
}

}  // namespace cuspcubes

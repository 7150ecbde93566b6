#pragma once

// JSON forms of the library's results. Every top-level document carries a
// "schema" tag matching a file under docs/schemas.

#include <optional>
#include <string>

#include "cuspcubes/cubing.hpp"
#include "cuspcubes/decide.hpp"
#include "cuspcubes/io.hpp"
#include "cuspcubes/pingpong.hpp"
#include "cuspcubes/polyhedra.hpp"

namespace cuspcubes {

inline constexpr const char* kSchemaCubing = "cuspcubes.cubing/1";
inline constexpr const char* kSchemaComplex = "cuspcubes.complex/1";
inline constexpr const char* kSchemaPolyhedra = "cuspcubes.polyhedra/1";
inline constexpr const char* kSchemaPingPong = "cuspcubes.pingpong/1";
inline constexpr const char* kSchemaVerdict = "cuspcubes.verdict/1";

inline json cubing_report(const CubedComplex& cx, const AlternatingDiagram& d, const NpcReport& npc) {
  json failures = json::array();
  for (const auto& f : npc.failures) failures.push_back({{"vertex", f.vertex}, {"label", f.label}, {"reason", f.reason}});
  auto h = hyperplanes(cx);
  json tori = json::array();
  for (const auto& t : boundary_cubings(cx, d))
    tori.push_back({{"component", t.component},
                    {"squares", t.squares},
                    {"vertices", t.vertices},
                    {"edges", t.edges},
                    {"euler", t.euler},
                    {"meridians_ok", t.meridians_ok},
                    {"longitudes_ok", t.longitudes_ok}});
  return {{"schema", kSchemaCubing},
          {"crossings", cx.crossings},
          {"cubes", cx.cubes.size()},
          {"inner_vertices", cx.inner_vertex_count()},
          {"inner_edges", cx.inner_edge_count()},
          {"boundary_squares", cx.boundary_square_count()},
          {"euler_characteristic", cx.euler_characteristic()},
          {"npc", npc.ok},
          {"vertices_checked", npc.checked},
          {"failures", failures},
          {"hyperplanes",
           {{"black", h.black},
            {"white", h.white},
            {"peripheral", h.peripheral},
            {"crossing_lines", h.crossing_lines},
            {"colors_consistent", h.colors_consistent}}},
          {"tori", tori}};
}

inline json complex_to_json(const CubedComplex& cx) {
  json cubes = json::array(), gluings = json::array(), vertices = json::array(), edges = json::array();
  for (const auto& c : cx.cubes) cubes.push_back({{"crossing", c.crossing}, {"upper", c.upper}});
  for (const auto& g : cx.gluings)
    gluings.push_back({{"cube_a", g.cube_a}, {"face_a", g.face_a}, {"cube_b", g.cube_b}, {"face_b", g.face_b}, {"vmap", g.vmap}});
  for (int x = 0; x < cx.vertex_count; ++x)
    vertices.push_back({{"id", x},
                        {"label", cx.vertex_label[x] ? json(to_string(*cx.vertex_label[x])) : json(nullptr)},
                        {"inner", static_cast<bool>(cx.vertex_inner[x])}});
  for (int e = 0; e < cx.edge_count; ++e)
    edges.push_back({{"id", e},
                     {"ends", cx.edge_ends[e]},
                     {"label", cx.edge_label[e] ? json(to_string(*cx.edge_label[e])) : json(nullptr)}});
  return {{"schema", kSchemaComplex}, {"cubes", cubes}, {"gluings", gluings}, {"vertices", vertices}, {"edges", edges}};
}

inline json polyhedra_to_json(const IdealPolyhedronPair& pp) {
  json faces = json::array(), classes = json::array();
  for (const auto& g : pp.gluings) {
    const auto& r = pp.diagram.region(g.region);
    faces.push_back({{"region", g.region}, {"color", to_string(r.color)}, {"edges", r.edges}, {"shift", g.shift}, {"pairs", g.pairs}});
  }
  for (const auto& c : pp.classes)
    classes.push_back({{"crossing", c.crossing}, {"plus_edges", c.plus_edges}, {"minus_edges", c.minus_edges}});
  return {{"schema", kSchemaPolyhedra}, {"mirror", pp.mirror}, {"faces", faces}, {"edge_classes", classes}};
}

template <class T>
json disk_to_json(const RoundDisk<T>& d) {
  return {{"center", to_string(d.center)}, {"radius_squared", Field<T>::str(d.radius_squared)}};
}

template <class T>
json certificate_to_json(const PingPongCertificate<T>& cert, const std::optional<WordCheck>& words = std::nullopt) {
  json bfs = json::array();
  for (const auto& b : cert.butterflies)
    bfs.push_back({{"map", to_string(b.map)}, {"neg", disk_to_json(b.neg)}, {"pos", disk_to_json(b.pos)}});
  json out = {{"schema", kSchemaPingPong},
              {"kind", to_string(cert.kind)},
              {"mode", cert.exact ? "exact" : "float"},
              {"butterflies", bfs},
              {"conjugator", to_string(cert.conjugator)},
              {"remark", cert.remark},
              {"diagnostic", cert.diagnostic}};
  if (words)
    out["words"] = {{"ok", words->ok}, {"checked", words->checked}, {"identity_word", words->identity_word}};
  return out;
}

inline json arc_to_json(const InRegion& a) {
  return {{"type", "in_region"}, {"region", a.region}, {"c1", a.c1}, {"c2", a.c2}, {"side", to_string(a.side)}};
}

inline json verdict_to_json(const Verdict& v) {
  json out = {{"schema", kSchemaVerdict}, {"verdict", to_string(v.kind)}, {"citations", v.citations}, {"notes", v.notes}};
  if (v.kind == VerdictKind::GeneratesLinkGroup) out["tunnel"] = to_string(v.tunnel);
  if (!v.case_label.empty()) out["case"] = v.case_label;
  if (v.omega >= 0) out["omega"] = v.omega;
  if (!v.word.empty()) {
    out["word"] = v.word;
    out["reduced_word"] = v.reduced_word;
  }
  if (v.equivalent_crossing >= 0) out["crossing"] = v.equivalent_crossing;
  if (v.witness) {
    const auto& w = *v.witness;
    const auto& s = w.spare;
    json spare = {{"route", to_string(s.route)}, {"region", s.region}, {"justification", s.justification}};
    if (s.transfer_face >= 0) {
      spare["transfer_face"] = s.transfer_face;
      spare["transfer_neighbors"] = s.transfer_neighbors;
      spare["transfer_perm"] = s.transfer_perm;
    }
    out["witness"] = {{"color", to_string(w.color)},
                      {"c1", w.c1},
                      {"c2", w.c2},
                      {"R1-", w.at_c1.minus},
                      {"R1+", w.at_c1.plus},
                      {"R2-", w.at_c2.minus},
                      {"R2+", w.at_c2.plus},
                      {"spare", spare}};
  }
  if (v.flype)
    out["flype"] = {{"twist_region", v.flype->twist_region},
                    {"crossing", v.flype->crossing},
                    {"image_arc", arc_to_json(v.flype->image)},
                    {"diagram", pd_to_json(v.flype->diagram)["pd"]}};
  return out;
}

}  // namespace cuspcubes

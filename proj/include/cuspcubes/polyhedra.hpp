#pragma once

// The two checkerboard ideal polyhedra P+(D), P-(D): faces are regions,
// edges are edges of D, ideal vertices are crossings. Face R of P+ is glued
// to face R of P- by rotating its edge cycle one step (the gear rule).

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cuspcubes/diagram.hpp"

namespace cuspcubes {

enum class Polyhedron { plus, minus };

inline const char* to_string(Polyhedron p) { return p == Polyhedron::plus ? "P+" : "P-"; }

struct EdgeClass {
  int crossing = -1;
  std::vector<int> plus_edges, minus_edges;  // edges of D
};

struct FaceGluing {
  int region = 0;
  int shift = 0;                  // P+ edge at cycle position j meets P- edge at j + shift
  std::vector<std::array<int, 2>> pairs;  // (P+ edge, P- edge)
};

struct IdealPolyhedronPair {
  AlternatingDiagram diagram;
  bool mirror = false;
  std::vector<FaceGluing> gluings;
  std::vector<EdgeClass> classes;
  std::vector<int> plus_class, minus_class;  // edge of D -> class index
};

// Counterclockwise index shift of the gear rule: clockwise for black.
inline int gear_shift(Color col, bool mirror) {
  int s = col == Color::black ? -1 : 1;
  return mirror ? -s : s;
}

inline IdealPolyhedronPair build_polyhedra(const AlternatingDiagram& d, bool mirror = false) {
  detail::require(d.crossing_count() > 0, "polyhedra need at least one crossing");
  detail::require(is_prime(d), "polyhedra need a prime diagram");
  IdealPolyhedronPair pp;
  pp.diagram = d;
  pp.mirror = mirror;
  const int m = d.edge_count();
  // Nodes 0..m-1 are P+ edges, m..2m-1 are P- edges.
  std::vector<int> parent(2 * m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& r : d.regions()) {
    FaceGluing g;
    g.region = r.id;
    g.shift = gear_shift(r.color, mirror);
    int n = r.size();
    for (int j = 0; j < n; ++j) {
      int a = r.edges[j], b = r.edges[((j + g.shift) % n + n) % n];
      g.pairs.push_back({a, b});
      parent[find(a)] = find(m + b);
    }
    pp.gluings.push_back(std::move(g));
  }
  std::map<int, int> index;
  pp.plus_class.assign(m, -1);
  pp.minus_class.assign(m, -1);
  for (int x = 0; x < 2 * m; ++x) {
    auto [it, fresh] = index.emplace(find(x), static_cast<int>(index.size()));
    if (fresh) pp.classes.emplace_back();
    auto& cls = pp.classes[it->second];
    if (x < m) {
      cls.plus_edges.push_back(x);
      pp.plus_class[x] = it->second;
    } else {
      cls.minus_edges.push_back(x - m);
      pp.minus_class[x - m] = it->second;
    }
  }
  // A class is the crossing arc at one crossing: its P+ edges end under that
  // crossing and its P- edges pass over it (roles swap under the mirror).
  for (auto& cls : pp.classes) {
    std::set<int> at;
    for (int e : cls.plus_edges) at.insert(mirror ? d.over_end(e) : d.under_end(e));
    for (int e : cls.minus_edges) at.insert(mirror ? d.under_end(e) : d.over_end(e));
    if (at.size() != 1 || cls.plus_edges.size() != 2 || cls.minus_edges.size() != 2) {
      int e = cls.plus_edges.empty() ? cls.minus_edges.front() : cls.plus_edges.front();
      auto lr = d.edge_regions(e);
      throw internal_error("gear rule inconsistency near regions R" + std::to_string(lr[0]) + ", R" +
                           std::to_string(lr[1]));
    }
    cls.crossing = *at.begin();
  }
  detail::ensure(static_cast<int>(pp.classes.size()) == d.crossing_count(), "edge classes do not match crossings");
  std::sort(pp.classes.begin(), pp.classes.end(), [](const EdgeClass& a, const EdgeClass& b) { return a.crossing < b.crossing; });
  for (int i = 0; i < static_cast<int>(pp.classes.size()); ++i) {
    for (int e : pp.classes[i].plus_edges) pp.plus_class[e] = i;
    for (int e : pp.classes[i].minus_edges) pp.minus_class[e] = i;
  }
  return pp;
}

// The checkerboard half-spaces of two faces of one polyhedron are disjoint
// exactly when the regions share no edge.
inline bool halfspace_disjoint(const IdealPolyhedronPair& pp, Polyhedron, int r1, int r2) {
  detail::require(r1 != r2, "halfspace_disjoint needs two different regions");
  return !region_adjacent(pp.diagram, r1, r2);
}

struct FaceTransfer {
  int region = 0;
  std::vector<int> neighbors;  // counterclockwise around the region
  int shift = 0;               // plane of neighbors[i] in P+ is that of neighbors[i + shift] in P-
  std::vector<int> perm;       // i -> i + shift mod n
};

inline FaceTransfer face_transfer(const IdealPolyhedronPair& pp, int region) {
  const auto& r = pp.diagram.region(region);
  FaceTransfer t;
  t.region = region;
  t.neighbors = region_neighbors(pp.diagram, region);
  t.shift = gear_shift(r.color, pp.mirror);
  int n = r.size();
  for (int i = 0; i < n; ++i) t.perm.push_back(((i + t.shift) % n + n) % n);
  return t;
}

inline std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
  return out;
}

struct ButterflyRegions {
  int minus = -1, plus = -1;
};

// The two same-coloured regions at crossing c. Default order: the corner
// after the crossing's first under half-edge (black) or over half-edge
// (white) is R-, the opposite corner R+; the mirror flag reverses it.
inline ButterflyRegions butterfly_regions(const IdealPolyhedronPair& pp, Polyhedron, int c, Color col) {
  auto rs = regions_at_crossing(pp.diagram, c, col);
  detail::ensure(rs[0] != rs[1], "same-coloured regions at a crossing coincide (non-prime diagram)");
  return pp.mirror ? ButterflyRegions{rs[1], rs[0]} : ButterflyRegions{rs[0], rs[1]};
}

inline std::string edge_class_dot(const IdealPolyhedronPair& pp) {
  std::ostringstream out;
  out << "graph edge_classes {\n";
  for (const auto& cls : pp.classes) {
    out << "  c" << cls.crossing << " [shape=box];\n";
    for (int e : cls.plus_edges) out << "  c" << cls.crossing << " -- \"P+ e" << e << "\";\n";
    for (int e : cls.minus_edges) out << "  c" << cls.crossing << " -- \"P- e" << e << "\";\n";
  }
  out << "}\n";
  return out.str();
}

namespace detail {

struct Point {
  double x = 0, y = 0;
};

// Tutte embedding of the crossing graph with the largest region as the outer
// face.
inline std::vector<Point> tutte_layout(const AlternatingDiagram& d, int outer, int iterations = 2000) {
  const int n = d.crossing_count();
  std::vector<Point> pos(n);
  std::vector<bool> fixed(n, false);
  const auto& o = d.region(outer);
  std::vector<int> ring;
  for (const auto& c : o.corners)
    if (std::find(ring.begin(), ring.end(), c.crossing) == ring.end()) ring.push_back(c.crossing);
  const double pi = std::acos(-1.0);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    double a = 2 * pi * static_cast<double>(i) / static_cast<double>(ring.size());
    pos[ring[i]] = {std::cos(a), -std::sin(a)};
    fixed[ring[i]] = true;
  }
  std::vector<std::vector<int>> nb(n);
  for (int e = 0; e < d.edge_count(); ++e) {
    auto h = d.edge_ends(e);
    int a = AlternatingDiagram::crossing_of(h[0]), b = AlternatingDiagram::crossing_of(h[1]);
    if (a == b) continue;
    nb[a].push_back(b);
    nb[b].push_back(a);
  }
  for (int it = 0; it < iterations; ++it)
    for (int v = 0; v < n; ++v) {
      if (fixed[v] || nb[v].empty()) continue;
      Point s;
      for (int w : nb[v]) {
        s.x += pos[w].x;
        s.y += pos[w].y;
      }
      pos[v] = {s.x / static_cast<double>(nb[v].size()), s.y / static_cast<double>(nb[v].size())};
    }
  return pos;
}

}  // namespace detail

// One circle per region through (or near) its corner crossings: black
// circles, white circles and the diagram, each in its own layer.
inline std::string circle_pattern_svg(const AlternatingDiagram& d) {
  detail::require(d.crossing_count() > 0, "circle pattern needs at least one crossing");
  int outer = 0;
  for (const auto& r : d.regions())
    if (r.size() > d.region(outer).size()) outer = r.id;
  auto pos = detail::tutte_layout(d, outer);
  const double scale = 180, off = 250;
  auto X = [&](double x) { return off + scale * x; };
  auto Y = [&](double y) { return off + scale * y; };
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" viewBox=\"0 0 500 500\">\n";
  out << "  <rect width=\"500\" height=\"500\" fill=\"white\"/>\n";
  out << "  <g id=\"diagram\" stroke=\"#888\" stroke-width=\"1.5\" fill=\"none\">\n";
  std::map<std::pair<int, int>, int> multiplicity;
  for (int e = 0; e < d.edge_count(); ++e) {
    auto h = d.edge_ends(e);
    int a = AlternatingDiagram::crossing_of(h[0]), b = AlternatingDiagram::crossing_of(h[1]);
    int k = multiplicity[std::minmax(a, b)]++;
    detail::Point p = pos[a], q = pos[b];
    double mx = (p.x + q.x) / 2, my = (p.y + q.y) / 2, dx = q.x - p.x, dy = q.y - p.y;
    double bend = (k % 2 == 0 ? 1 : -1) * 0.15 * ((k + 1) / 2);
    if (a == b) {
      mx += 0.15;
      bend = 0;
    }
    out << "    <path d=\"M " << X(p.x) << " " << Y(p.y) << " Q " << X(mx - bend * dy) << " " << Y(my + bend * dx) << " "
        << X(q.x) << " " << Y(q.y) << "\"/>\n";
  }
  out << "  </g>\n";
  for (Color col : {Color::black, Color::white}) {
    out << "  <g id=\"" << to_string(col) << "\" fill=\"" << (col == Color::black ? "#333" : "#ccc")
        << "\" fill-opacity=\"0.15\" stroke=\"" << (col == Color::black ? "black" : "#999") << "\" stroke-width=\"1.5\">\n";
    for (const auto& r : d.regions()) {
      if (r.color != col) continue;
      detail::Point c;
      double radius = 0;
      if (r.id == outer) {
        radius = 1.15;
      } else {
        for (const auto& k : r.corners) {
          c.x += pos[k.crossing].x / r.size();
          c.y += pos[k.crossing].y / r.size();
        }
        for (const auto& k : r.corners) radius = std::max(radius, std::hypot(pos[k.crossing].x - c.x, pos[k.crossing].y - c.y));
        radius = std::max(radius * 1.05, 0.05);
      }
      out << "    <circle id=\"R" << r.id << "\" cx=\"" << X(c.x) << "\" cy=\"" << Y(c.y) << "\" r=\"" << scale * radius << "\"/>\n";
    }
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace cuspcubes

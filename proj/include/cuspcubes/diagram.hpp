#pragma once

// Alternating link diagrams on S^2 as rotation systems: crossings with four
// half-edges in counterclockwise order, under-strand at positions 0 and 2.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cuspcubes/error.hpp"

namespace cuspcubes {

enum class Color : unsigned char { black, white };

inline Color opposite(Color c) { return c == Color::black ? Color::white : Color::black; }
inline const char* to_string(Color c) { return c == Color::black ? "black" : "white"; }

// Corner k of a crossing lies between half-edges k and k+1 (counterclockwise).
struct Corner {
  int crossing = 0;
  int k = 0;
  friend bool operator==(const Corner&, const Corner&) = default;
};

struct Region {
  int id = 0;
  Color color = Color::black;
  std::vector<Corner> corners;  // counterclockwise face walk
  std::vector<int> edges;       // edges[j] joins corners[j] and corners[j + 1]

  int size() const { return static_cast<int>(edges.size()); }
  bool touches(int crossing) const {
    return std::any_of(corners.begin(), corners.end(), [&](const Corner& c) { return c.crossing == crossing; });
  }
};

// Position of a crossing inside the standard 2-bridge diagram.
struct TwistLabel {
  int region = 0;  // 1-based twist region A_i
  int index = 0;   // 0-based position inside the region
};

class AlternatingDiagram {
 public:
  // The crossingless circle.
  AlternatingDiagram() = default;

  // labels[c] lists edge labels counterclockwise with under half-edges at
  // positions 0 and 2. This is also the PD convention.
  static AlternatingDiagram from_rotation(const std::vector<std::array<int, 4>>& labels) {
    AlternatingDiagram d;
    d.build(labels);
    return d;
  }

  int crossing_count() const { return static_cast<int>(edge_at_.size()) / 4; }
  int edge_count() const { return static_cast<int>(ends_.size()); }
  int region_count() const { return crossing_count() == 0 ? 2 : static_cast<int>(regions_.size()); }

  static int half_edge(int c, int k) { return 4 * c + ((k % 4) + 4) % 4; }
  static int crossing_of(int h) { return h / 4; }
  static int position_of(int h) { return h % 4; }
  static bool is_over(int h) { return h % 2 == 1; }

  int edge_of(int h) const { return edge_at_.at(h); }
  int partner(int h) const {
    const auto& e = ends_.at(edge_at_.at(h));
    return e[0] == h ? e[1] : e[0];
  }
  const std::array<int, 2>& edge_ends(int e) const { return ends_.at(e); }
  int label_of(int e) const { return labels_.at(e); }

  // The crossing where edge e passes over, and where it passes under.
  int over_end(int e) const {
    const auto& h = ends_.at(e);
    return crossing_of(is_over(h[0]) ? h[0] : h[1]);
  }
  int under_end(int e) const {
    const auto& h = ends_.at(e);
    return crossing_of(is_over(h[0]) ? h[1] : h[0]);
  }

  int region_at(int c, int k) const { return corner_region_.at(half_edge(c, k)); }
  const Region& region(int r) const {
    detail::require(r >= 0 && r < static_cast<int>(regions_.size()), "region id " + std::to_string(r) + " out of range");
    return regions_[r];
  }
  const std::vector<Region>& regions() const { return regions_; }
  Color color(int r) const { return region(r).color; }

  // Region to the left and right of e travelled from edge_ends(e)[0].
  std::array<int, 2> edge_regions(int e) const {
    int h = ends_.at(e)[0];
    return {corner_region_[h], corner_region_[half_edge(crossing_of(h), position_of(h) - 1)]};
  }

  int count_regions(Color col) const {
    if (crossing_count() == 0) return 1;
    return static_cast<int>(std::count_if(regions_.begin(), regions_.end(), [&](const Region& r) { return r.color == col; }));
  }

  // Components of the link and, per edge, the component it lies on.
  int component_count() const { return components_; }
  int component_of_edge(int e) const { return component_.at(e); }

  const std::vector<TwistLabel>& twist_labels() const { return twist_; }
  void set_twist_labels(std::vector<TwistLabel> t) {
    detail::require(t.empty() || static_cast<int>(t.size()) == crossing_count(), "twist labels: one per crossing");
    twist_ = std::move(t);
  }

  void check_crossing(int c) const {
    detail::require(c >= 0 && c < crossing_count(), "crossing id " + std::to_string(c) + " out of range");
  }

  // PD code with components oriented and edges renumbered 1..2c along them.
  std::vector<std::array<int, 4>> to_pd() const {
    std::vector<int> number(edge_count(), 0), incoming(4 * crossing_count(), 0);
    int next = 1;
    std::vector<bool> seen(edge_count(), false);
    for (int e0 = 0; e0 < edge_count(); ++e0) {
      if (seen[e0]) continue;
      int h = ends_[e0][0];  // leave through h
      while (!seen[edge_of(h)]) {
        seen[edge_of(h)] = true;
        number[edge_of(h)] = next++;
        int arrive = partner(h);
        incoming[arrive] = 1;
        h = half_edge(crossing_of(arrive), position_of(arrive) + 2);
      }
    }
    std::vector<std::array<int, 4>> pd(crossing_count());
    for (int c = 0; c < crossing_count(); ++c) {
      int start = incoming[half_edge(c, 0)] ? 0 : 2;
      for (int j = 0; j < 4; ++j) pd[c][j] = number[edge_of(half_edge(c, start + j))];
    }
    return pd;
  }

 private:
  std::vector<int> edge_at_;                // half-edge -> edge
  std::vector<std::array<int, 2>> ends_;    // edge -> half-edges
  std::vector<int> labels_;                 // edge -> input label
  std::vector<int> corner_region_;          // half-edge h = (c,k) -> region of corner k
  std::vector<Region> regions_;
  std::vector<int> component_;
  int components_ = 1;
  std::vector<TwistLabel> twist_;

  void build(const std::vector<std::array<int, 4>>& code) {
    const int n = static_cast<int>(code.size());
    if (n == 0) return;
    std::map<int, std::vector<int>> where;
    for (int c = 0; c < n; ++c)
      for (int k = 0; k < 4; ++k) where[code[c][k]].push_back(half_edge(c, k));
    edge_at_.assign(4 * n, -1);
    for (const auto& [label, hs] : where) {
      detail::require(hs.size() == 2, "malformed code: edge label " + std::to_string(label) + " appears " +
                                          std::to_string(hs.size()) + " time(s), expected 2");
      int e = static_cast<int>(ends_.size());
      ends_.push_back({hs[0], hs[1]});
      labels_.push_back(label);
      edge_at_[hs[0]] = edge_at_[hs[1]] = e;
    }
    detail::require(static_cast<int>(ends_.size()) == 2 * n, "malformed code: expected " + std::to_string(2 * n) + " edges");

    // Connectivity through edges.
    std::vector<int> stack{0}, mark(n, 0);
    mark[0] = 1;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      for (int k = 0; k < 4; ++k) {
        int o = crossing_of(partner(half_edge(c, k)));
        if (!mark[o]) {
          mark[o] = 1;
          stack.push_back(o);
        }
      }
    }
    for (int c = 0; c < n; ++c)
      detail::require(mark[c], "disconnected diagram: crossing " + std::to_string(c) + " unreachable from crossing 0");

    // Face walk: leaving (c,k) the face on the left holds corner k; after
    // arriving at (c',k') it continues out of (c',k'-1).
    corner_region_.assign(4 * n, -1);
    for (int h0 = 0; h0 < 4 * n; ++h0) {
      if (corner_region_[h0] >= 0) continue;
      Region r;
      r.id = static_cast<int>(regions_.size());
      int h = h0;
      do {
        corner_region_[h] = r.id;
        r.corners.push_back({crossing_of(h), position_of(h)});
        r.edges.push_back(edge_of(h));
        int arrive = partner(h);
        h = half_edge(crossing_of(arrive), position_of(arrive) - 1);
      } while (h != h0);
      regions_.push_back(std::move(r));
    }
    detail::require(static_cast<int>(regions_.size()) == n + 2,
                    "non-planar rotation system: " + std::to_string(regions_.size()) + " faces, Euler needs " +
                        std::to_string(n + 2));

    for (int e = 0; e < 2 * n; ++e)
      detail::require(is_over(ends_[e][0]) != is_over(ends_[e][1]),
                      "not alternating: edge " + std::to_string(labels_[e]) + " joins two " +
                          (is_over(ends_[e][0]) ? "over" : "under") + " positions");

    // Alternation makes corner parity constant on each face: even corners
    // (under then over, counterclockwise) are black.
    for (auto& r : regions_) {
      r.color = r.corners.front().k % 2 == 0 ? Color::black : Color::white;
      for (const auto& c : r.corners)
        detail::ensure((c.k % 2 == 0) == (r.color == Color::black), "face walk mixes corner parities");
    }

    component_.assign(2 * n, -1);
    components_ = 0;
    for (int e0 = 0; e0 < 2 * n; ++e0) {
      if (component_[e0] >= 0) continue;
      int h = ends_[e0][0];
      while (component_[edge_of(h)] < 0) {
        component_[edge_of(h)] = components_;
        int arrive = partner(h);
        h = half_edge(crossing_of(arrive), position_of(arrive) + 2);
      }
      ++components_;
    }
  }
};

inline AlternatingDiagram parse_pd(const std::vector<std::array<int, 4>>& code) {
  detail::require(!code.empty(), "empty PD code");
  return AlternatingDiagram::from_rotation(code);
}

// Rotation form with an explicit over/under pattern per crossing, e.g. "uouo"
// or "ouou": the labels are rotated so an under half-edge comes first.
inline AlternatingDiagram from_rotation_pattern(const std::vector<std::array<int, 4>>& rotation,
                                                const std::vector<std::string>& over_under) {
  detail::require(rotation.size() == over_under.size(), "rotation and over_under differ in length");
  std::vector<std::array<int, 4>> code(rotation.size());
  for (std::size_t c = 0; c < rotation.size(); ++c) {
    const std::string& pat = over_under[c];
    int shift = -1;
    if (pat == "uouo") shift = 0;
    if (pat == "ouou") shift = 1;
    detail::require(shift >= 0, "over_under entry '" + pat + "' must be \"uouo\" or \"ouou\"");
    for (int k = 0; k < 4; ++k) code[c][k] = rotation[c][(k + shift) % 4];
  }
  detail::require(!code.empty(), "empty rotation system");
  return AlternatingDiagram::from_rotation(code);
}

// Regions across each edge of r, in the counterclockwise order of r's edges.
inline std::vector<int> region_neighbors(const AlternatingDiagram& d, int r) {
  std::vector<int> out;
  for (int e : d.region(r).edges) {
    auto lr = d.edge_regions(e);
    out.push_back(lr[0] == r ? lr[1] : lr[0]);
  }
  return out;
}

inline bool region_adjacent(const AlternatingDiagram& d, int r1, int r2) {
  d.region(r1);
  d.region(r2);
  for (int e : d.region(r1).edges) {
    auto lr = d.edge_regions(e);
    if ((lr[0] == r1 && lr[1] == r2) || (lr[1] == r1 && lr[0] == r2)) return true;
  }
  return false;
}

// Some pair of regions sharing two or more edges gives a loop meeting D twice
// with crossings on both sides.
inline bool is_prime(const AlternatingDiagram& d) {
  if (d.crossing_count() == 0) return false;
  std::map<std::pair<int, int>, int> shared;
  for (int e = 0; e < d.edge_count(); ++e) {
    auto lr = d.edge_regions(e);
    if (++shared[{std::min(lr[0], lr[1]), std::max(lr[0], lr[1])}] >= 2) return false;
  }
  return true;
}

inline bool is_reduced(const AlternatingDiagram& d) {
  for (const auto& r : d.regions()) {
    std::set<int> seen;
    for (const auto& c : r.corners)
      if (!seen.insert(c.crossing).second) return false;
  }
  return true;
}

// Regions of one color at a crossing: corners 0, 2 for black and 1, 3 for white.
inline std::array<int, 2> regions_at_crossing(const AlternatingDiagram& d, int c, Color col) {
  d.check_crossing(c);
  int k = col == Color::black ? 0 : 1;
  return {d.region_at(c, k), d.region_at(c, k + 2)};
}

// Edges of D joining crossings c1 and c2.
inline bool crossings_adjacent(const AlternatingDiagram& d, int c1, int c2) {
  for (int k = 0; k < 4; ++k)
    if (AlternatingDiagram::crossing_of(d.partner(AlternatingDiagram::half_edge(c1, k))) == c2) return true;
  return false;
}

// True when c1 and c2 are consecutive corners of region r.
inline bool adjacent_on_boundary(const AlternatingDiagram& d, int r, int c1, int c2) {
  const auto& reg = d.region(r);
  int n = reg.size();
  for (int j = 0; j < n; ++j) {
    int a = reg.corners[j].crossing, b = reg.corners[(j + 1) % n].crossing;
    if ((a == c1 && b == c2) || (a == c2 && b == c1)) return true;
  }
  return false;
}

struct DualEdge {
  int crossing;
  int a, b;
};

struct DualGraph {
  Color color = Color::black;
  std::vector<int> vertices;  // region ids
  std::vector<DualEdge> edges;
};

// Vertices are regions of one color, one edge per crossing.
inline DualGraph black_dual_graph(const AlternatingDiagram& d, Color col = Color::black) {
  DualGraph g;
  g.color = col;
  for (const auto& r : d.regions())
    if (r.color == col) g.vertices.push_back(r.id);
  for (int c = 0; c < d.crossing_count(); ++c) {
    auto ab = regions_at_crossing(d, c, col);
    g.edges.push_back({c, ab[0], ab[1]});
  }
  return g;
}

inline std::string to_dot(const DualGraph& g) {
  std::ostringstream out;
  out << "graph " << to_string(g.color) << "_dual {\n";
  for (int v : g.vertices) out << "  R" << v << ";\n";
  for (const auto& e : g.edges) out << "  R" << e.a << " -- R" << e.b << " [label=\"c" << e.crossing << "\"];\n";
  out << "}\n";
  return out.str();
}

enum class SmallRegionStatus { found, none_needed, count_check_failed };

struct SmallRegion {
  SmallRegionStatus status = SmallRegionStatus::none_needed;
  int region = -1;      // a region of the opposite color
  int sides = 0;        // 2 (bigon) or 3 (trigon)
  int color_count = 0;  // number of regions of the witness color
};

// With exactly 3 (or 4) regions of color `col`, a region of the other color
// that is a bigon (or a bigon or trigon) whose neighbours are all distinct.
inline SmallRegion find_small_white_region(const AlternatingDiagram& d, Color col = Color::black) {
  SmallRegion out;
  out.color_count = d.count_regions(col);
  if (out.color_count >= 5) return out;
  if (out.color_count <= 2) {
    out.status = SmallRegionStatus::count_check_failed;
    return out;
  }
  int max_sides = out.color_count == 3 ? 2 : 3;
  for (int sides = 2; sides <= max_sides; ++sides) {
    for (const auto& r : d.regions()) {
      if (r.color == col || r.size() != sides) continue;
      auto nb = region_neighbors(d, r.id);
      std::set<int> distinct(nb.begin(), nb.end());
      if (static_cast<int>(distinct.size()) != sides) continue;
      out.status = SmallRegionStatus::found;
      out.region = r.id;
      out.sides = sides;
      return out;
    }
  }
  out.status = SmallRegionStatus::count_check_failed;
  return out;
}

}  // namespace cuspcubes

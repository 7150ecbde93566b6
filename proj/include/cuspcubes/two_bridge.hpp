#pragma once

// The standard alternating diagram of a 2-bridge link C(a1, ..., an), built
// from rational tangle twists, and the flype used on its middle twist regions.

#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "cuspcubes/arc.hpp"
#include "cuspcubes/diagram.hpp"

namespace cuspcubes {

struct TwistSequence {
  std::vector<int> a;

  TwistSequence() = default;
  explicit TwistSequence(std::vector<int> terms) : a(std::move(terms)) { validate(); }

  void validate() const {
    detail::require(a.size() >= 2, "twist sequence needs n >= 2 terms");
    for (int x : a) detail::require(x >= 1, "twist sequence terms must be positive");
    detail::require(a.front() >= 2 && a.back() >= 2, "twist sequence needs a1 >= 2 and an >= 2");
  }
  int n() const { return static_cast<int>(a.size()); }
  int total() const { return std::accumulate(a.begin(), a.end(), 0); }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s;
  }
};

namespace detail {

// Plane 4-valent graphs drawn as tangles. Each crossing has legs NE, NW, SW,
// SE in counterclockwise order; wires join legs and free points.
class ShadowBuilder {
 public:
  enum Leg { NE = 0, NW = 1, SW = 2, SE = 3 };
  struct Ports {
    int nw, ne, sw, se;
  };

  int free_node() {
    wires_.emplace_back();
    return static_cast<int>(wires_.size()) - 1;
  }
  int add_crossing(TwistLabel label) {
    int c = static_cast<int>(legs_.size());
    std::array<int, 4> l{};
    for (int k = 0; k < 4; ++k) {
      l[k] = free_node();
      leg_of_.resize(wires_.size(), -1);
      leg_of_[l[k]] = 4 * c + k;
    }
    legs_.push_back(l);
    labels_.push_back(label);
    return c;
  }
  int leg(int c, Leg l) const { return legs_[c][l]; }
  void wire(int a, int b) {
    wires_[a].push_back(b);
    wires_[b].push_back(a);
  }

  Ports zero_tangle() {
    Ports p{free_node(), free_node(), free_node(), free_node()};
    wire(p.nw, p.ne);
    wire(p.sw, p.se);
    return p;
  }
  void twist_east(Ports& p, TwistLabel t) {
    int x = add_crossing(t);
    wire(leg(x, NW), p.ne);
    wire(leg(x, SW), p.se);
    p.ne = leg(x, NE);
    p.se = leg(x, SE);
  }
  void twist_south(Ports& p, TwistLabel t) {
    int x = add_crossing(t);
    wire(leg(x, NW), p.sw);
    wire(leg(x, NE), p.se);
    p.sw = leg(x, SW);
    p.se = leg(x, SE);
  }
  void twist_west(Ports& p, TwistLabel t) {
    int x = add_crossing(t);
    wire(leg(x, NE), p.nw);
    wire(leg(x, SE), p.sw);
    p.nw = leg(x, NW);
    p.sw = leg(x, SW);
  }
  void twist_north(Ports& p, TwistLabel t) {
    int x = add_crossing(t);
    wire(leg(x, SW), p.nw);
    wire(leg(x, SE), p.ne);
    p.nw = leg(x, NW);
    p.ne = leg(x, NE);
  }

  // Collapses wire chains into edges; node_edge maps every node to its edge.
  std::vector<std::array<int, 4>> rotation(std::vector<int>& node_edge) const {
    leg_of_.resize(wires_.size(), -1);
    node_edge.assign(wires_.size(), -1);
    std::vector<std::array<int, 4>> rot(legs_.size());
    int next = 0;
    for (std::size_t c = 0; c < legs_.size(); ++c) {
      for (int k = 0; k < 4; ++k) {
        int start = legs_[c][k];
        if (node_edge[start] >= 0) continue;
        int e = next++;
        node_edge[start] = e;
        int prev = start;
        ensure(wires_[start].size() == 1, "tangle leg left unwired");
        int cur = wires_[start][0];
        while (leg_of_[cur] < 0) {
          node_edge[cur] = e;
          ensure(wires_[cur].size() == 2, "free tangle point must have two wires");
          int nxt = wires_[cur][0] == prev ? wires_[cur][1] : wires_[cur][0];
          prev = cur;
          cur = nxt;
        }
        node_edge[cur] = e;
      }
    }
    for (std::size_t c = 0; c < legs_.size(); ++c)
      for (int k = 0; k < 4; ++k) rot[c][k] = node_edge[legs_[c][k]];
    return rot;
  }

  const std::vector<TwistLabel>& labels() const { return labels_; }

 private:
  std::vector<std::vector<int>> wires_;
  std::vector<std::array<int, 4>> legs_;
  mutable std::vector<int> leg_of_;
  std::vector<TwistLabel> labels_;
};

// Makes a plane 4-valent graph alternating: faces are 2-coloured, the face at
// corner `white_anchor` of crossing 0 is white, and each crossing is rotated so
// that its black corners are 0 and 2.
inline AlternatingDiagram alternate_shadow(std::vector<std::array<int, 4>> rot, int white_anchor) {
  const int n = static_cast<int>(rot.size());
  std::vector<std::array<int, 2>> ends(2 * n, {-1, -1});
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < 4; ++k) {
      auto& e = ends[rot[c][k]];
      (e[0] < 0 ? e[0] : e[1]) = 4 * c + k;
    }
  auto partner = [&](int h) {
    const auto& e = ends[rot[h / 4][h % 4]];
    return e[0] == h ? e[1] : e[0];
  };
  std::vector<int> face(4 * n, -1);
  int faces = 0;
  for (int h0 = 0; h0 < 4 * n; ++h0) {
    if (face[h0] >= 0) continue;
    int h = h0;
    do {
      face[h] = faces;
      int a = partner(h);
      h = 4 * (a / 4) + (a % 4 + 3) % 4;
    } while (h != h0);
    ++faces;
  }
  ensure(faces == n + 2, "tangle shadow is not a plane diagram");
  // Across the edge leaving (c,k) the faces are corner k and corner k-1.
  std::vector<int> col(faces, -1);
  std::vector<std::vector<int>> adj(faces);
  for (int h = 0; h < 4 * n; ++h) {
    int other = face[4 * (h / 4) + (h % 4 + 3) % 4];
    adj[face[h]].push_back(other);
  }
  col[face[white_anchor]] = 1;
  std::vector<int> stack{face[white_anchor]};
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int g : adj[f]) {
      if (col[g] < 0) {
        col[g] = 1 - col[f];
        stack.push_back(g);
      }
      ensure(col[g] != col[f], "shadow faces are not 2-colourable");
    }
  }
  for (int c = 0; c < n; ++c) {
    if (col[face[4 * c]] == 0) continue;
    std::array<int, 4> r{};
    for (int k = 0; k < 4; ++k) r[k] = rot[c][(k + 1) % 4];
    rot[c] = r;
  }
  return AlternatingDiagram::from_rotation(rot);
}

struct TwoBridgeBuild {
  AlternatingDiagram diagram;
  std::vector<int> node_edge;
  int mark_a = -1, mark_b = -1;  // ports where the flyped crossing used to sit
};

// C(a1..an): a1 twists east of the 0-tangle, a2 twists south, and so on,
// closed so that the last twist region is not nugatory. With flype_at = i,
// the whole of A_i is placed on the far side of the tangle before it.
inline TwoBridgeBuild build_two_bridge(const TwistSequence& seq, int flype_at) {
  ShadowBuilder b;
  auto p = b.zero_tangle();
  TwoBridgeBuild out;
  for (int i = 1; i <= seq.n(); ++i) {
    bool horizontal = i % 2 == 1;
    if (i == flype_at) {
      for (int j = 0; j < seq.a[i - 1]; ++j) {
        if (horizontal)
          b.twist_west(p, {i, j});
        else
          b.twist_north(p, {i, j});
      }
      out.mark_a = horizontal ? p.ne : p.sw;
      out.mark_b = p.se;
      continue;
    }
    for (int j = 0; j < seq.a[i - 1]; ++j) {
      if (horizontal)
        b.twist_east(p, {i, j});
      else
        b.twist_south(p, {i, j});
    }
  }
  if (seq.n() % 2 == 1) {
    b.wire(p.nw, p.ne);
    b.wire(p.sw, p.se);
  } else {
    b.wire(p.nw, p.sw);
    b.wire(p.ne, p.se);
  }
  auto rot = b.rotation(out.node_edge);
  // Crossing 0 is the first crossing of A_1; its corner 3 is the bigon
  // inside A_1, which is made white.
  out.diagram = alternate_shadow(rot, 3);
  out.diagram.set_twist_labels(b.labels());
  return out;
}

}  // namespace detail

inline AlternatingDiagram two_bridge_diagram(const TwistSequence& seq) {
  seq.validate();
  return detail::build_two_bridge(seq, 0).diagram;
}

struct FlypeResult {
  AlternatingDiagram diagram;
  InRegion arc;
  int twist_region = 0;
};

// The rational tangle of A_1..A_{i-1} is turned over once per crossing of
// A_i, carrying the whole twist region to its far side. Crossing arcs inside
// one twist region are isotopic, and the arc ends up in the region that
// opens where A_i was, joining the overpasses of the two strands bounding it.
// Carrying only one crossing of a longer twist region would leave the arc
// next to the remaining crossings, still a crossing arc.
inline FlypeResult flype(const TwistSequence& seq, int i, const CrossingArc& arc) {
  seq.validate();
  AlternatingDiagram d = two_bridge_diagram(seq);
  d.check_crossing(arc.crossing);
  detail::require(i >= 1 && i <= seq.n(), "twist region index out of range");
  detail::require(d.twist_labels()[arc.crossing].region == i,
                  "crossing " + std::to_string(arc.crossing) + " is not in twist region A_" + std::to_string(i));
  detail::require(i != 1 && i != seq.n(), "crossing arcs of A_1 and A_n are the upper and lower tunnels; no flype applies");
  auto built = detail::build_two_bridge(seq, i);
  const auto& dd = built.diagram;
  int en = built.node_edge[built.mark_a], es = built.node_edge[built.mark_b];
  auto rn = dd.edge_regions(en), rs = dd.edge_regions(es);
  int common = -1;
  for (int x : rn)
    for (int y : rs)
      if (x == y) common = x;
  detail::ensure(common >= 0, "flype: strands at the old crossing do not bound a common region");
  FlypeResult out;
  out.diagram = dd;
  out.arc = InRegion{common, dd.over_end(en), dd.over_end(es), Side::upper};
  out.twist_region = i;
  return out;
}

}  // namespace cuspcubes

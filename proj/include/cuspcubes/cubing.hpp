#pragma once

// The cubed decomposition of an alternating link exterior: two cubes per
// crossing, glued along square faces, plus the checks that make it a
// non-positively curved complex (Gromov's link condition).

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "cuspcubes/diagram.hpp"

namespace cuspcubes {

namespace detail {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n = 0) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Local cube geometry: vertex v = x + 2y + 4z, face 2d + s is {bit d == s}.
inline int bit(int v, int d) { return (v >> d) & 1; }
inline int direction(int v, int w) {
  int x = v ^ w;
  return x == 1 ? 0 : x == 2 ? 1 : x == 4 ? 2 : -1;
}
inline std::array<int, 4> face_vertices(int f) {
  int d = f / 2, s = f % 2;
  std::array<int, 4> out{};
  int n = 0;
  for (int v = 0; v < 8; ++v)
    if (bit(v, d) == s) out[n++] = v;
  return out;
}
inline int edge_index(int v, int w) {
  int d = direction(v, w);
  int base = std::min(v, w);
  // Remaining two bits of base identify the edge among the four parallel ones.
  int rest = 0, j = 0;
  for (int e = 0; e < 3; ++e)
    if (e != d) rest |= bit(base, e) << j++;
  return 4 * d + rest;
}
// Equatorial position of half-edge k: (0,0), (1,0), (1,1), (0,1).
inline int corner_vertex(int k, int z) {
  static constexpr int xy[4] = {0, 1, 3, 2};
  return xy[((k % 4) + 4) % 4] + 4 * z;
}

}  // namespace detail

enum class VertexKind { inner_plus, inner_minus, boundary_plus, boundary_minus };
enum class EdgeKind { region, vertical_plus, vertical_minus, boundary };

struct VertexLabel {
  VertexKind kind;
  int crossing = -1;  // boundary vertices only
  friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};
struct EdgeLabel {
  EdgeKind kind;
  int id = -1;  // region or crossing
  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

inline std::string to_string(const VertexLabel& l) {
  switch (l.kind) {
    case VertexKind::inner_plus: return "v+";
    case VertexKind::inner_minus: return "v-";
    case VertexKind::boundary_plus: return "b+(c" + std::to_string(l.crossing) + ")";
    case VertexKind::boundary_minus: return "b-(c" + std::to_string(l.crossing) + ")";
  }
  return "?";
}
inline std::string to_string(const EdgeLabel& l) {
  switch (l.kind) {
    case EdgeKind::region: return "e(R" + std::to_string(l.id) + ")";
    case EdgeKind::vertical_plus: return "f+(c" + std::to_string(l.id) + ")";
    case EdgeKind::vertical_minus: return "f-(c" + std::to_string(l.id) + ")";
    case EdgeKind::boundary: return "boundary";
  }
  return "?";
}

// Face fa of cube a is identified with face fb of cube b; vmap sends the
// vertices of fa to those of fb (other entries -1).
struct Gluing {
  int cube_a = 0, face_a = 0, cube_b = 0, face_b = 0;
  std::array<int, 8> vmap{-1, -1, -1, -1, -1, -1, -1, -1};
};

struct Cube {
  int crossing = 0;
  bool upper = true;  // U_c above the projection sphere, L_c below
};

// Abstract 2-dimensional link of a vertex. Edges and triangles are kept as
// found, so repeated simplices survive and can be reported.
struct VertexLink {
  std::vector<std::string> vertex_labels;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> triangles;
};

struct FlagReport {
  bool ok = true;
  std::string reason;
};

inline FlagReport check_simplicial(const VertexLink& lk) {
  std::set<std::pair<int, int>> es;
  for (const auto& e : lk.edges) {
    if (e[0] == e[1]) return {false, "edge is a loop at link vertex " + lk.vertex_labels[e[0]]};
    auto key = std::minmax(e[0], e[1]);
    if (!es.insert(key).second)
      return {false, "repeated edge " + lk.vertex_labels[key.first] + " -- " + lk.vertex_labels[key.second]};
  }
  std::set<std::array<int, 3>> ts;
  for (auto t : lk.triangles) {
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) return {false, "degenerate triangle"};
    if (!ts.insert(t).second) return {false, "repeated triangle"};
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (!es.count({t[i], t[j]})) return {false, "triangle side missing from the edge set"};
  }
  return {};
}

// Simplicial and every clique spans a simplex. Links here are 2-dimensional,
// so any 4-clique is already a violation.
inline FlagReport is_flag(const VertexLink& lk) {
  if (auto s = check_simplicial(lk); !s.ok) return {false, "not simplicial: " + s.reason};
  const int n = static_cast<int>(lk.vertex_labels.size());
  std::vector<std::set<int>> adj(n);
  for (const auto& e : lk.edges) {
    adj[e[0]].insert(e[1]);
    adj[e[1]].insert(e[0]);
  }
  std::set<std::array<int, 3>> ts;
  for (auto t : lk.triangles) {
    std::sort(t.begin(), t.end());
    ts.insert(t);
  }
  for (int a = 0; a < n; ++a)
    for (int b : adj[a]) {
      if (b <= a) continue;
      for (int c : adj[b]) {
        if (c <= b || !adj[a].count(c)) continue;
        if (!ts.count({a, b, c}))
          return {false, "empty triangle " + lk.vertex_labels[a] + ", " + lk.vertex_labels[b] + ", " + lk.vertex_labels[c]};
        for (int d : adj[c])
          if (d > c && adj[a].count(d) && adj[b].count(d)) return {false, "4-clique in a 2-dimensional link"};
      }
    }
  return {};
}

struct TorusReport {
  int squares = 0, vertices = 0, edges = 0;
  int euler = 0;
  bool meridians_ok = false;   // every diagonal is a loop crossing each longitude once
  bool longitudes_ok = false;  // black and white edges each form one cycle
  int component = -1;          // link component
};

struct NpcFailure {
  int vertex = -1;
  std::string label;
  std::string reason;
};

struct NpcReport {
  bool ok = true;
  int checked = 0;
  std::vector<NpcFailure> failures;
};

enum class LinkAngle { orthogonal, far };

class CubedComplex {
 public:
  std::vector<Cube> cubes;
  std::vector<Gluing> gluings;

  // Skeleton of the quotient; filled by finalize().
  std::vector<int> vertex_of;  // cube * 8 + v
  std::vector<int> edge_of;    // cube * 12 + edge_index
  std::vector<int> square_of;  // cube * 6 + face
  std::vector<std::optional<VertexLabel>> vertex_label;
  std::vector<std::optional<EdgeLabel>> edge_label;
  std::vector<std::array<int, 2>> edge_ends;
  std::vector<bool> vertex_inner;
  std::vector<int> square_slots;  // number of cube faces in each square class
  std::vector<int> end_of;        // cube * 24 + v * 3 + d: edge-end classes
  std::vector<int> corner_of;     // cube * 24 + v * 3 + normal: square-corner classes
  std::vector<int> midsquare_of;  // cube * 3 + normal direction
  std::vector<int> axis_of;       // cube: line along z, the intersection of the two colored midsquares
  int vertex_count = 0, edge_count = 0, square_count = 0, end_count = 0, corner_count = 0;
  int midsquare_classes = 0, axis_classes = 0;
  std::vector<std::string> label_errors;
  int crossings = 0;

  void finalize(const std::vector<VertexLabel>& vlab, const std::vector<EdgeLabel>& elab) {
    const int nc = static_cast<int>(cubes.size());
    detail::DisjointSets V(8 * nc), E(12 * nc), S(6 * nc), ends(24 * nc), corners(24 * nc), mid(3 * nc), axis(nc);
    for (const auto& g : gluings) {
      int na = g.face_a / 2, nb = g.face_b / 2;
      auto fv = detail::face_vertices(g.face_a);
      S.unite(6 * g.cube_a + g.face_a, 6 * g.cube_b + g.face_b);
      if (na == 2 && nb == 2) axis.unite(g.cube_a, g.cube_b);
      for (int v : fv) {
        int w = g.vmap[v];
        detail::ensure(w >= 0 && detail::bit(w, nb) == g.face_b % 2, "gluing map leaves the target face");
        V.unite(8 * g.cube_a + v, 8 * g.cube_b + w);
        corners.unite(24 * g.cube_a + 3 * v + na, 24 * g.cube_b + 3 * w + nb);
        for (int d = 0; d < 3; ++d) {
          if (d == na) continue;
          int v2 = v ^ (1 << d), w2 = g.vmap[v2];
          int dd = detail::direction(w, w2);
          detail::ensure(dd >= 0 && dd != nb, "gluing map is not a square isometry");
          E.unite(12 * g.cube_a + detail::edge_index(v, v2), 12 * g.cube_b + detail::edge_index(w, w2));
          ends.unite(24 * g.cube_a + 3 * v + d, 24 * g.cube_b + 3 * w + dd);
          mid.unite(3 * g.cube_a + d, 3 * g.cube_b + dd);
        }
      }
    }
    auto compact = [](detail::DisjointSets& ds, int n, std::vector<int>& out) {
      std::map<int, int> id;
      out.assign(n, 0);
      for (int i = 0; i < n; ++i) {
        auto [it, fresh] = id.emplace(ds.find(i), static_cast<int>(id.size()));
        out[i] = it->second;
      }
      return static_cast<int>(id.size());
    };
    vertex_count = compact(V, 8 * nc, vertex_of);
    edge_count = compact(E, 12 * nc, edge_of);
    square_count = compact(S, 6 * nc, square_of);
    end_count = compact(ends, 24 * nc, end_of);
    corner_count = compact(corners, 24 * nc, corner_of);
    midsquare_classes = compact(mid, 3 * nc, midsquare_of);
    axis_classes = compact(axis, nc, axis_of);

    label_errors.clear();
    vertex_label.assign(vertex_count, std::nullopt);
    vertex_inner.assign(vertex_count, false);
    for (int i = 0; i < 8 * nc; ++i) {
      int x = vertex_of[i];
      auto& l = vertex_label[x];
      if (!l) {
        l = vlab[i];
        vertex_inner[x] = (i % 8) < 4;
      } else if (!(*l == vlab[i])) {
        label_errors.push_back("vertex " + std::to_string(x) + " mixes " + to_string(*l) + " and " + to_string(vlab[i]));
      }
    }
    edge_label.assign(edge_count, std::nullopt);
    edge_ends.assign(edge_count, {-1, -1});
    for (int q = 0; q < nc; ++q)
      for (int v = 0; v < 8; ++v)
        for (int d = 0; d < 3; ++d) {
          int w = v ^ (1 << d);
          if (w < v) continue;
          int slot = 12 * q + detail::edge_index(v, w);
          int x = edge_of[slot];
          auto& l = edge_label[x];
          if (!l) {
            l = elab[slot];
            edge_ends[x] = {vertex_of[8 * q + v], vertex_of[8 * q + w]};
          } else if (!(*l == elab[slot])) {
            label_errors.push_back("edge " + std::to_string(x) + " mixes " + to_string(*l) + " and " + to_string(elab[slot]));
          }
        }
    square_slots.assign(square_count, 0);
    for (int i = 0; i < 6 * nc; ++i) ++square_slots[square_of[i]];
  }

  int inner_vertex_count() const { return static_cast<int>(std::count(vertex_inner.begin(), vertex_inner.end(), true)); }
  int inner_edge_count() const {
    int n = 0;
    for (const auto& e : edge_ends) n += vertex_inner[e[0]] && vertex_inner[e[1]];
    return n;
  }
  int boundary_square_count() const {
    return static_cast<int>(std::count(square_slots.begin(), square_slots.end(), 1));
  }
  int euler_characteristic() const {
    return vertex_count - edge_count + square_count - static_cast<int>(cubes.size());
  }

  int find_vertex(VertexKind kind, int crossing = -1) const {
    for (int x = 0; x < vertex_count; ++x)
      if (vertex_label[x] && vertex_label[x]->kind == kind && vertex_label[x]->crossing == crossing) return x;
    return -1;
  }

  // Cube corners at a vertex of the quotient.
  VertexLink vertex_link(int x) const {
    detail::require(x >= 0 && x < vertex_count, "vertex id out of range");
    VertexLink lk;
    std::map<int, int> lv;
    auto link_vertex = [&](int q, int v, int d) {
      int cls = end_of[24 * q + 3 * v + d];
      auto [it, fresh] = lv.emplace(cls, static_cast<int>(lv.size()));
      if (fresh) {
        int w = v ^ (1 << d);
        const auto& el = edge_label[edge_of[12 * q + detail::edge_index(v, w)]];
        std::string s = el ? to_string(*el) : "edge";
        if (el && el->kind == EdgeKind::region) s = "m*(R" + std::to_string(el->id) + ")";
        lk.vertex_labels.push_back(s + "#" + std::to_string(cls));
      }
      return it->second;
    };
    std::set<int> corners_seen;
    for (std::size_t q = 0; q < cubes.size(); ++q)
      for (int v = 0; v < 8; ++v) {
        if (vertex_of[8 * q + v] != x) continue;
        std::array<int, 3> t{};
        for (int d = 0; d < 3; ++d) t[d] = link_vertex(static_cast<int>(q), v, d);
        lk.triangles.push_back(t);
        for (int n = 0; n < 3; ++n) {
          int cls = corner_of[24 * q + 3 * v + n];
          if (!corners_seen.insert(cls).second) continue;
          lk.edges.push_back({t[(n + 1) % 3], t[(n + 2) % 3]});
        }
      }
    return lk;
  }

  // The link vertex of edge class e at its end in vertex x, if present.
  std::optional<int> link_vertex_of_edge(int x, int e, const VertexLink& lk) const {
    for (std::size_t q = 0; q < cubes.size(); ++q)
      for (int v = 0; v < 8; ++v) {
        if (vertex_of[8 * q + v] != x) continue;
        for (int d = 0; d < 3; ++d) {
          if (edge_of[12 * q + detail::edge_index(v, v ^ (1 << d))] != e) continue;
          std::string tag = "#" + std::to_string(end_of[24 * q + 3 * v + d]);
          for (std::size_t i = 0; i < lk.vertex_labels.size(); ++i) {
            const auto& s = lk.vertex_labels[i];
            if (s.size() >= tag.size() && s.compare(s.size() - tag.size(), tag.size(), tag) == 0) return static_cast<int>(i);
          }
        }
      }
    return std::nullopt;
  }

  int region_edge(int region) const {
    for (int e = 0; e < edge_count; ++e)
      if (edge_label[e] && edge_label[e]->kind == EdgeKind::region && edge_label[e]->id == region) return e;
    return -1;
  }
};

namespace detail {

inline int far_crossing(const AlternatingDiagram& d, int c, int k) {
  return AlternatingDiagram::crossing_of(d.partner(AlternatingDiagram::half_edge(c, k)));
}

}  // namespace detail

// Two cubes U_c, L_c per crossing. The face z = 0 of each sits on the
// projection sphere, z = 1 on the boundary torus. The equatorial square has
// the four half-edges of c at its corners; its sides are the inner edges
// e(R) of the four corner regions.
inline CubedComplex build_cubing(const AlternatingDiagram& d) {
  detail::require(d.crossing_count() > 0, "cubing needs at least one crossing");
  detail::require(is_prime(d), "cubing needs a prime diagram");
  detail::require(is_reduced(d), "cubing needs a reduced diagram");
  const int n = d.crossing_count();
  CubedComplex cx;
  cx.crossings = n;
  std::vector<VertexLabel> vlab(16 * n);
  std::vector<EdgeLabel> elab(24 * n, EdgeLabel{EdgeKind::boundary});
  for (int c = 0; c < n; ++c) {
    for (int upper = 1; upper >= 0; --upper) {
      int q = static_cast<int>(cx.cubes.size());
      cx.cubes.push_back({c, upper == 1});
      for (int k = 0; k < 4; ++k) {
        bool under = k % 2 == 0;
        int v0 = detail::corner_vertex(k, 0), v1 = detail::corner_vertex(k, 1);
        vlab[8 * q + v0] = {under ? VertexKind::inner_plus : VertexKind::inner_minus};
        // Vertical edges are rays through overpasses (f+) and underpasses (f-).
        int owner = (upper == 1) == under ? c : detail::far_crossing(d, c, k);
        vlab[8 * q + v1] = {under ? VertexKind::boundary_plus : VertexKind::boundary_minus, owner};
        elab[12 * q + detail::edge_index(v0, v1)] = {under ? EdgeKind::vertical_plus : EdgeKind::vertical_minus, owner};
        int w0 = detail::corner_vertex(k + 1, 0);
        elab[12 * q + detail::edge_index(v0, w0)] = {EdgeKind::region, d.region_at(c, k)};
      }
    }
  }
  auto U = [](int c) { return 2 * c; };
  auto L = [](int c) { return 2 * c + 1; };
  // Faces of the cube: equator is face 4 (z = 0); side faces by corner k.
  auto side_face = [](int k) {
    // corner k spans positions k and k+1.
    static constexpr int f[4] = {2, 1, 3, 0};  // y=0, x=1, y=1, x=0
    return f[k];
  };
  for (int c = 0; c < n; ++c) {
    Gluing g{U(c), 4, L(c), 4, {}};
    g.vmap.fill(-1);
    for (int v = 0; v < 4; ++v) g.vmap[v] = v;
    cx.gluings.push_back(g);
  }
  for (int c = 0; c < n; ++c) {
    for (int k = 0; k < 4; ++k) {
      int hu = k % 2 == 0 ? k : (k + 1) % 4;
      int ho = k % 2 == 0 ? (k + 1) % 4 : k;
      int arrive = d.partner(AlternatingDiagram::half_edge(c, ho));
      int c2 = AlternatingDiagram::crossing_of(arrive), j = AlternatingDiagram::position_of(arrive);
      int k2 = ho == k ? (j + 3) % 4 : j;  // the corner of the same region at c2
      int other = k2 == j ? (j + 1) % 4 : k2;
      detail::ensure(d.region_at(c2, k2) == d.region_at(c, k), "vertical gluing lands in a different region");
      Gluing g{U(c), side_face(k), L(c2), side_face(k2), {}};
      g.vmap.fill(-1);
      for (int z = 0; z < 2; ++z) {
        g.vmap[detail::corner_vertex(hu, z)] = detail::corner_vertex(j, z);
        g.vmap[detail::corner_vertex(ho, z)] = detail::corner_vertex(other, z);
      }
      cx.gluings.push_back(g);
    }
  }
  cx.finalize(vlab, elab);
  // Every face but the top ones must be glued exactly once.
  std::vector<int> uses(12 * n, 0);
  for (const auto& g : cx.gluings) {
    ++uses[6 * g.cube_a + g.face_a];
    ++uses[6 * g.cube_b + g.face_b];
  }
  for (int q = 0; q < 2 * n; ++q)
    for (int f = 0; f < 6; ++f)
      detail::ensure(uses[6 * q + f] == (f == 5 ? 0 : 1), "face glued " + std::to_string(uses[6 * q + f]) + " times");
  detail::ensure(cx.label_errors.empty(), cx.label_errors.empty() ? "" : cx.label_errors.front());
  return cx;
}

struct Corruption {
  enum Kind { remove, twist } kind = remove;
  int index = 0;
};

// Deliberately broken copies for negative tests: drop a gluing, or compose
// its map with a quarter turn of the square.
inline CubedComplex corrupt(const CubedComplex& cx, Corruption how) {
  detail::require(!cx.gluings.empty(), "nothing to corrupt");
  CubedComplex out = cx;
  int k = ((how.index % static_cast<int>(cx.gluings.size())) + static_cast<int>(cx.gluings.size())) %
          static_cast<int>(cx.gluings.size());
  if (how.kind == Corruption::remove) {
    out.gluings.erase(out.gluings.begin() + k);
  } else {
    auto& g = out.gluings[k];
    auto fv = detail::face_vertices(g.face_a);
    // Cyclic order of the face's corners.
    std::array<int, 4> cyc{fv[0], fv[1], fv[3], fv[2]};
    std::array<int, 8> m = g.vmap;
    for (int i = 0; i < 4; ++i) m[cyc[i]] = g.vmap[cyc[(i + 1) % 4]];
    g.vmap = m;
  }
  std::vector<VertexLabel> vlab(8 * out.cubes.size(), VertexLabel{VertexKind::inner_plus});
  std::vector<EdgeLabel> elab(12 * out.cubes.size(), EdgeLabel{EdgeKind::boundary});
  // Labels are carried over slot by slot; mismatches are expected and kept in
  // label_errors.
  for (std::size_t q = 0; q < cx.cubes.size(); ++q) {
    for (int v = 0; v < 8; ++v) vlab[8 * q + v] = *cx.vertex_label[cx.vertex_of[8 * q + v]];
    for (int e = 0; e < 12; ++e) elab[12 * q + e] = *cx.edge_label[cx.edge_of[12 * q + e]];
  }
  out.finalize(vlab, elab);
  return out;
}

inline NpcReport verify_npc(const CubedComplex& cx, unsigned threads = 0) {
  NpcReport rep;
  const int n = cx.vertex_count;
  std::vector<FlagReport> res(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max(1, n));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int x = static_cast<int>(t); x < n; x += static_cast<int>(threads)) res[x] = is_flag(cx.vertex_link(x));
    });
  for (auto& th : pool) th.join();
  for (int x = 0; x < n; ++x) {
    ++rep.checked;
    if (res[x].ok) continue;
    rep.ok = false;
    rep.failures.push_back({x, cx.vertex_label[x] ? to_string(*cx.vertex_label[x]) : "?", res[x].reason});
  }
  return rep;
}

inline LinkAngle link_angle_class(const CubedComplex& cx, int x, int r1, int r2) {
  detail::require(x >= 0 && x < cx.vertex_count && cx.vertex_inner[x], "link_angle_class needs an inner vertex");
  detail::require(r1 != r2, "link_angle_class needs two different regions");
  auto lk = cx.vertex_link(x);
  int e1 = cx.region_edge(r1), e2 = cx.region_edge(r2);
  detail::require(e1 >= 0 && e2 >= 0, "unknown region");
  auto a = cx.link_vertex_of_edge(x, e1, lk), b = cx.link_vertex_of_edge(x, e2, lk);
  detail::ensure(a && b, "inner edge missing from the vertex link");
  for (const auto& e : lk.edges)
    if ((e[0] == *a && e[1] == *b) || (e[0] == *b && e[1] == *a)) return LinkAngle::orthogonal;
  return LinkAngle::far;
}

// Hyperplane colors: midsquares normal to x meet the black corner edges.
struct HyperplaneReport {
  int black = 0, white = 0, peripheral = 0;  // class counts
  std::vector<int> black_sizes, white_sizes;  // midsquares per class
  int crossing_lines = 0;                      // components of the black-white intersection
  bool colors_consistent = true;
};

inline HyperplaneReport hyperplanes(const CubedComplex& cx) {
  HyperplaneReport rep;
  std::map<int, int> dir_of, size_of;
  for (std::size_t q = 0; q < cx.cubes.size(); ++q)
    for (int d = 0; d < 3; ++d) {
      int cls = cx.midsquare_of[3 * q + d];
      auto [it, fresh] = dir_of.emplace(cls, d);
      if (!fresh && it->second != d) rep.colors_consistent = false;
      ++size_of[cls];
    }
  for (auto [cls, d] : dir_of) {
    if (d == 0) {
      ++rep.black;
      rep.black_sizes.push_back(size_of[cls]);
    } else if (d == 1) {
      ++rep.white;
      rep.white_sizes.push_back(size_of[cls]);
    } else {
      ++rep.peripheral;
    }
  }
  rep.crossing_lines = cx.axis_classes;
  return rep;
}

// Boundary tori: top faces grouped by shared boundary edges.
inline std::vector<TorusReport> boundary_cubings(const CubedComplex& cx, const AlternatingDiagram& d) {
  const int nq = static_cast<int>(cx.cubes.size());
  std::vector<int> tops;
  for (int q = 0; q < nq; ++q)
    if (cx.square_slots[cx.square_of[6 * q + 5]] == 1) tops.push_back(q);
  detail::DisjointSets ds(nq);
  std::map<int, std::vector<int>> by_edge;
  for (int q : tops) {
    auto fv = detail::face_vertices(5);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (detail::direction(fv[i], fv[j]) >= 0) by_edge[cx.edge_of[12 * q + detail::edge_index(fv[i], fv[j])]].push_back(q);
  }
  for (const auto& [e, qs] : by_edge)
    for (std::size_t i = 1; i < qs.size(); ++i) ds.unite(qs[0], qs[i]);
  std::map<int, std::vector<int>> tori;
  for (int q : tops) tori[ds.find(q)].push_back(q);
  std::vector<TorusReport> out;
  for (const auto& [root, qs] : tori) {
    TorusReport t;
    t.squares = static_cast<int>(qs.size());
    std::set<int> vs, es, black, white;
    for (int q : qs) {
      for (int v = 4; v < 8; ++v) vs.insert(cx.vertex_of[8 * q + v]);
      for (int v = 4; v < 8; ++v)
        for (int dd = 0; dd < 2; ++dd) {
          int w = v ^ (1 << dd);
          if (w < v) continue;
          int e = cx.edge_of[12 * q + detail::edge_index(v, w)];
          es.insert(e);
          // Edges along y lie parallel to the black midsquare.
          (dd == 1 ? black : white).insert(e);
        }
    }
    t.vertices = static_cast<int>(vs.size());
    t.edges = static_cast<int>(es.size());
    t.euler = t.vertices - t.edges + t.squares;
    auto single_cycle = [&](const std::set<int>& edges) {
      std::map<int, std::vector<int>> adj;
      for (int e : edges) {
        adj[cx.edge_ends[e][0]].push_back(e);
        adj[cx.edge_ends[e][1]].push_back(e);
      }
      for (const auto& [v, inc] : adj)
        if (inc.size() != 2) return false;
      if (static_cast<int>(adj.size()) != t.vertices) return false;
      detail::DisjointSets vd(cx.vertex_count);
      for (int e : edges) vd.unite(cx.edge_ends[e][0], cx.edge_ends[e][1]);
      std::set<int> roots;
      for (const auto& [v, inc] : adj) roots.insert(vd.find(v));
      return roots.size() == 1;
    };
    t.longitudes_ok = single_cycle(black) && single_cycle(white);

    // Meridian diagonals: U_c joins its two b+(c) corners, L_c its two b-(c)
    // corners. Each is a loop; around its vertex the two ends must be
    // separated by both longitudes.
    bool ok = true;
    std::set<int> hit;
    for (int q : qs) {
      bool up = cx.cubes[q].upper;
      int a = up ? detail::corner_vertex(0, 1) : detail::corner_vertex(1, 1);
      int b = up ? detail::corner_vertex(2, 1) : detail::corner_vertex(3, 1);
      int x = cx.vertex_of[8 * q + a];
      if (cx.vertex_of[8 * q + b] != x || !hit.insert(x).second) {
        ok = false;
        continue;
      }
      // Corners of boundary squares at x, in cyclic order: walk corner ->
      // edge-end -> next corner. A corner (q, v) of a top face has in-face
      // edges along x and y.
      struct C {
        int q, v;
      };
      std::vector<C> cs;
      for (int q2 : qs)
        for (int v = 4; v < 8; ++v)
          if (cx.vertex_of[8 * q2 + v] == x) cs.push_back({q2, v});
      auto end_class = [&](int q2, int v, int dd) { return cx.end_of[24 * q2 + 3 * v + dd]; };
      std::map<int, std::vector<int>> at_end;  // edge-end class -> corners
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (int dd = 0; dd < 2; ++dd) at_end[end_class(cs[i].q, cs[i].v, dd)].push_back(static_cast<int>(i));
      // Count longitude ends of each colour on each side of the diagonal.
      int start = -1, stop = -1;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].q == q && cs[i].v == a) start = static_cast<int>(i);
        if (cs[i].q == q && cs[i].v == b) stop = static_cast<int>(i);
      }
      // Walk from start away through its x-direction end, until stop.
      std::array<int, 2> seen{0, 0};
      int cur = start, via_dir = 0;
      bool closed = false;
      for (std::size_t steps = 0; steps <= cs.size(); ++steps) {
        int cls = end_class(cs[cur].q, cs[cur].v, via_dir);
        int e = cx.edge_of[12 * cs[cur].q + detail::edge_index(cs[cur].v, cs[cur].v ^ (1 << via_dir))];
        ++seen[black.count(e) ? 0 : 1];
        const auto& two = at_end[cls];
        if (two.size() != 2) break;
        int nxt = two[0] == cur ? two[1] : two[0];
        // Leave the next corner through its other in-face direction.
        int in_dir = -1;
        for (int dd = 0; dd < 2; ++dd)
          if (end_class(cs[nxt].q, cs[nxt].v, dd) == cls) in_dir = dd;
        cur = nxt;
        via_dir = 1 - in_dir;
        if (cur == stop) {
          closed = true;
          break;
        }
      }
      if (!closed || seen[0] != 1 || seen[1] != 1) ok = false;
    }
    t.meridians_ok = ok && static_cast<int>(hit.size()) == t.vertices;
    // Component: the cubes' crossings do not say which strand; use the
    // component of an under edge at the crossing of the first square.
    const auto& cb = cx.cubes[qs.front()];
    int kk = cb.upper ? 0 : 1;
    t.component = d.component_of_edge(d.edge_of(AlternatingDiagram::half_edge(cb.crossing, kk)));
    out.push_back(t);
  }
  return out;
}

}  // namespace cuspcubes

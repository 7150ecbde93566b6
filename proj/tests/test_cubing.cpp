#include <gtest/gtest.h>

#include <map>

#include "cuspcubes/cubing.hpp"
#include "cuspcubes/two_bridge.hpp"
#include "diagram_oracles.hpp"

using namespace cuspcubes;

namespace {

const std::string kData = CUSPCUBES_DATA_DIR;

std::vector<oracle::CorpusEntry> corpus() {
  auto out = oracle::pd_corpus(kData + "/pd");
  for (const auto& s : oracle::twist_sequences(4, 8)) out.push_back({"C(" + s.str() + ")", two_bridge_diagram(s)});
  return out;
}

VertexLink make_link(int n, std::vector<std::array<int, 2>> e, std::vector<std::array<int, 3>> t) {
  VertexLink lk;
  for (int i = 0; i < n; ++i) lk.vertex_labels.push_back("x" + std::to_string(i));
  lk.edges = std::move(e);
  lk.triangles = std::move(t);
  return lk;
}

// Strip the "#class" suffix and map m*(R) to R, f+(c)/f-(c) to c.
std::string link_key(const std::string& label) {
  std::string s = label.substr(0, label.find('#'));
  if (s.rfind("m*(", 0) == 0) return s.substr(3, s.size() - 4);
  if (s.rfind("f", 0) == 0) return s.substr(3, s.size() - 4);
  return s;
}

}  // namespace

TEST(Flag, SmallComplexes) {
  auto empty_tetra = make_link(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  EXPECT_FALSE(is_flag(empty_tetra).ok);
  auto hollow_triangle = make_link(3, {{0, 1}, {1, 2}, {0, 2}}, {});
  EXPECT_FALSE(is_flag(hollow_triangle).ok);
  auto simplex = make_link(3, {{0, 1}, {1, 2}, {0, 2}}, {{0, 1, 2}});
  EXPECT_TRUE(is_flag(simplex).ok);
  auto square = make_link(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {});
  EXPECT_TRUE(is_flag(square).ok);
  // Octahedron: the link of a vertex in the cubical tiling of R^3.
  std::vector<std::array<int, 2>> oe;
  std::vector<std::array<int, 3>> ot;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (b != a + 3) oe.push_back({a, b});
  for (int x : {0, 3})
    for (int y : {1, 4})
      for (int z : {2, 5}) ot.push_back({x, y, z});
  EXPECT_TRUE(is_flag(make_link(6, oe, ot)).ok);
}

TEST(Flag, NonSimplicialReported) {
  auto doubled = make_link(3, {{0, 1}, {1, 0}, {1, 2}}, {});
  auto r = is_flag(doubled);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.reason.find("repeated edge"), std::string::npos);
  EXPECT_FALSE(check_simplicial(make_link(2, {{0, 0}}, {})).ok);
  EXPECT_FALSE(check_simplicial(make_link(3, {{0, 1}, {1, 2}, {0, 2}}, {{0, 1, 2}, {2, 1, 0}})).ok);
  EXPECT_FALSE(check_simplicial(make_link(3, {{0, 1}, {1, 2}}, {{0, 1, 2}})).ok);
}

TEST(Cubing, CountsOverCorpus) {
  for (const auto& [name, d] : corpus()) {
    SCOPED_TRACE(name);
    int c = d.crossing_count();
    auto cx = build_cubing(d);
    EXPECT_EQ(static_cast<int>(cx.cubes.size()), 2 * c);
    EXPECT_EQ(cx.inner_vertex_count(), 2);
    EXPECT_EQ(cx.inner_edge_count(), c + 2);
    EXPECT_EQ(cx.boundary_square_count(), 2 * c);
    EXPECT_EQ(cx.vertex_count, 2 + 2 * c);
    EXPECT_EQ(cx.euler_characteristic(), 0);
    EXPECT_TRUE(cx.label_errors.empty());
    // Each region gives exactly one inner edge.
    for (int r = 0; r < d.region_count(); ++r) EXPECT_GE(cx.region_edge(r), 0);
  }
}

TEST(Cubing, FaceIncidence) {
  auto d = two_bridge_diagram(TwistSequence({2, 2}));
  auto cx = build_cubing(d);
  EXPECT_EQ(cx.cubes.size(), 8u);
  EXPECT_EQ(cx.gluings.size(), 5u * 4u);
  std::map<std::pair<int, int>, int> uses;
  for (const auto& g : cx.gluings) {
    ++uses[{g.cube_a, g.face_a}];
    ++uses[{g.cube_b, g.face_b}];
    std::set<int> image;
    for (int v : detail::face_vertices(g.face_a)) image.insert(g.vmap[v]);
    auto fb = detail::face_vertices(g.face_b);
    EXPECT_EQ(image, std::set<int>(fb.begin(), fb.end()));
  }
  for (int q = 0; q < 8; ++q) {
    int boundary = 0;
    for (int f = 0; f < 6; ++f) {
      int u = uses[{q, f}];
      EXPECT_LE(u, 1);
      boundary += u == 0;
    }
    EXPECT_EQ(boundary, 1);
  }
}

TEST(Cubing, RejectsNonPrimeAndNonReduced) {
  EXPECT_THROW(build_cubing(load_diagram(kData + "/nonprime/connected_sum_trefoils.json")), invalid_input);
  EXPECT_THROW(build_cubing(load_diagram(kData + "/nonprime/kink.json")), invalid_input);
  EXPECT_THROW(build_cubing(AlternatingDiagram{}), invalid_input);
}

TEST(Cubing, InnerLinksAreSubdividedDualGraph) {
  for (const auto& [name, d] : corpus()) {
    SCOPED_TRACE(name);
    auto cx = build_cubing(d);
    const int c = d.crossing_count();
    // Expected: regions and crossings as vertices; one region-region edge
    // per edge of D; each crossing joined to its four corner regions.
    std::multiset<std::pair<std::string, std::string>> expect;
    auto add = [&](std::string a, std::string b) { expect.insert(std::minmax(a, b)); };
    for (int e = 0; e < d.edge_count(); ++e) {
      auto lr = d.edge_regions(e);
      add("R" + std::to_string(lr[0]), "R" + std::to_string(lr[1]));
    }
    for (int x = 0; x < c; ++x)
      for (int k = 0; k < 4; ++k) add("c" + std::to_string(x), "R" + std::to_string(d.region_at(x, k)));
    for (VertexKind kind : {VertexKind::inner_plus, VertexKind::inner_minus}) {
      int v = cx.find_vertex(kind);
      ASSERT_GE(v, 0);
      auto lk = cx.vertex_link(v);
      EXPECT_EQ(lk.vertex_labels.size(), static_cast<std::size_t>(2 * c + 2));
      EXPECT_EQ(lk.edges.size(), static_cast<std::size_t>(6 * c));
      EXPECT_EQ(lk.triangles.size(), static_cast<std::size_t>(4 * c));
      std::multiset<std::pair<std::string, std::string>> got;
      for (const auto& e : lk.edges) {
        std::string a = link_key(lk.vertex_labels[e[0]]), b = link_key(lk.vertex_labels[e[1]]);
        got.insert(std::minmax(a, b));
      }
      EXPECT_EQ(got, expect);
      EXPECT_TRUE(is_flag(lk).ok);
    }
  }
}

TEST(Cubing, BoundaryVertexLinksAreConesOverSquares) {
  auto cx = build_cubing(load_diagram(kData + "/pd/knot_6_2.json"));
  int seen = 0;
  for (int x = 0; x < cx.vertex_count; ++x) {
    if (cx.vertex_inner[x]) continue;
    auto lk = cx.vertex_link(x);
    EXPECT_EQ(lk.vertex_labels.size(), 5u);
    EXPECT_EQ(lk.edges.size(), 8u);
    EXPECT_EQ(lk.triangles.size(), 4u);
    EXPECT_TRUE(is_flag(lk).ok);
    ++seen;
  }
  EXPECT_EQ(seen, 12);
}

TEST(Cubing, NpcOverCorpus) {
  for (const auto& [name, d] : corpus()) {
    auto rep = verify_npc(build_cubing(d));
    EXPECT_TRUE(rep.ok) << name << (rep.failures.empty() ? "" : ": " + rep.failures[0].reason);
    EXPECT_EQ(rep.checked, 2 + 2 * d.crossing_count());
  }
}

TEST(Cubing, CorruptionsFailWithLocatedVertex) {
  int total = 0;
  for (const auto& [name, d] : oracle::pd_corpus(kData + "/pd")) {
    auto cx = build_cubing(d);
    for (int k = 0; k < static_cast<int>(cx.gluings.size()); ++k)
      for (auto kind : {Corruption::remove, Corruption::twist}) {
        auto rep = verify_npc(corrupt(cx, {kind, k}), 1);
        ASSERT_FALSE(rep.ok) << name << " corruption " << k;
        ASSERT_FALSE(rep.failures.empty());
        EXPECT_GE(rep.failures[0].vertex, 0);
        EXPECT_FALSE(rep.failures[0].reason.empty());
        ++total;
      }
  }
  EXPECT_GE(total, 10);
}

TEST(Cubing, RemovedGluingBreaksSimplicialityAtInnerVertex) {
  auto cx = build_cubing(two_bridge_diagram(TwistSequence({2, 2})));
  auto rep = verify_npc(corrupt(cx, {Corruption::remove, 1}));
  ASSERT_FALSE(rep.ok);
  bool inner = false;
  for (const auto& f : rep.failures) {
    inner |= f.label == "v+" || f.label == "v-";
    EXPECT_NE(f.reason.find("not simplicial"), std::string::npos);
  }
  EXPECT_TRUE(inner);
}

TEST(Cubing, LinkAngleMatchesAdjacency) {
  for (const auto& [name, d] : oracle::pd_corpus(kData + "/pd")) {
    auto cx = build_cubing(d);
    for (VertexKind kind : {VertexKind::inner_plus, VertexKind::inner_minus}) {
      int v = cx.find_vertex(kind);
      for (int a = 0; a < d.region_count(); ++a)
        for (int b = 0; b < d.region_count(); ++b) {
          if (a == b) {
            EXPECT_THROW(link_angle_class(cx, v, a, b), invalid_input);
            continue;
          }
          EXPECT_EQ(link_angle_class(cx, v, a, b) == LinkAngle::orthogonal, region_adjacent(d, a, b)) << name;
        }
    }
    int boundary = cx.find_vertex(VertexKind::boundary_plus, 0);
    EXPECT_THROW(link_angle_class(cx, boundary, 0, 1), invalid_input);
  }
}

TEST(Cubing, Hyperplanes) {
  for (const auto& [name, d] : corpus()) {
    SCOPED_TRACE(name);
    int c = d.crossing_count();
    auto h = hyperplanes(build_cubing(d));
    EXPECT_TRUE(h.colors_consistent);
    EXPECT_EQ(h.black, 1);
    EXPECT_EQ(h.white, 1);
    EXPECT_EQ(h.black_sizes, std::vector<int>{2 * c});
    EXPECT_EQ(h.white_sizes, std::vector<int>{2 * c});
    EXPECT_EQ(h.peripheral, d.component_count());
    EXPECT_EQ(h.crossing_lines, c);
  }
}

TEST(Cubing, BoundaryTori) {
  for (const auto& [name, d] : corpus()) {
    SCOPED_TRACE(name);
    auto cx = build_cubing(d);
    auto tori = boundary_cubings(cx, d);
    ASSERT_EQ(static_cast<int>(tori.size()), d.component_count());
    int squares = 0;
    std::set<int> comps;
    for (const auto& t : tori) {
      EXPECT_EQ(t.euler, 0);
      EXPECT_TRUE(t.meridians_ok);
      EXPECT_TRUE(t.longitudes_ok);
      EXPECT_EQ(t.vertices, t.squares);
      squares += t.squares;
      comps.insert(t.component);
    }
    EXPECT_EQ(squares, 2 * d.crossing_count());
    EXPECT_EQ(static_cast<int>(comps.size()), d.component_count());
  }
}

TEST(Cubing, FigureEightAndTrefoilExamples) {
  auto fig8 = build_cubing(load_diagram(kData + "/pd/figure_eight.json"));
  EXPECT_EQ(fig8.cubes.size(), 8u);
  EXPECT_EQ(fig8.inner_vertex_count(), 2);
  EXPECT_EQ(fig8.inner_edge_count(), 6);
  EXPECT_EQ(fig8.vertex_link(fig8.find_vertex(VertexKind::inner_plus)).vertex_labels.size(), 10u);
  auto tref = build_cubing(load_diagram(kData + "/pd/trefoil.json"));
  EXPECT_EQ(tref.cubes.size(), 6u);
  EXPECT_EQ(tref.inner_edge_count(), 5);
  auto hopf = load_diagram(kData + "/pd/hopf.json");
  EXPECT_EQ(boundary_cubings(build_cubing(hopf), hopf).size(), 2u);
}

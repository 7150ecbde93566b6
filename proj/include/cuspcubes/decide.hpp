#pragma once

// Classification of a meridian pair given by an arc between two crossings:
// tunnel, crossing arc, inessential, or free geometrically finite with a
// butterfly-region witness.

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cuspcubes/arc.hpp"
#include "cuspcubes/diagram.hpp"
#include "cuspcubes/polyhedra.hpp"
#include "cuspcubes/two_bridge.hpp"

namespace cuspcubes {

enum class VerdictKind { Inessential, GeneratesLinkGroup, FreeGeometricallyFinite, CrossingArcEquivalent, NotCovered };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Inessential: return "Inessential";
    case VerdictKind::GeneratesLinkGroup: return "GeneratesLinkGroup";
    case VerdictKind::FreeGeometricallyFinite: return "FreeGeometricallyFinite";
    case VerdictKind::CrossingArcEquivalent: return "CrossingArcEquivalent";
    case VerdictKind::NotCovered: return "NotCovered";
  }
  return "?";
}

enum class Tunnel { upper, lower };

inline const char* to_string(Tunnel t) { return t == Tunnel::upper ? "upper" : "lower"; }

// Citation anchors attached to verdicts.
namespace cite {
inline constexpr const char* free_theorem = "free-geometrically-finite-theorem";
inline constexpr const char* tunnel_theorem = "two-bridge-tunnel-theorem";
inline constexpr const char* crossing_arc_excluded = "crossing-arc-exclusion";
inline constexpr const char* inessential = "inessential-arc";
inline constexpr const char* distinct_regions = "distinct-butterfly-regions";
inline constexpr const char* nonempty_complement = "nonempty-butterfly-complement";
inline constexpr const char* small_region = "small-opposite-region";
inline constexpr const char* common_plane = "common-plane-shift";
inline constexpr const char* disjoint_half_space = "disjoint-half-space";
inline constexpr const char* flype = "flype";
}  // namespace cite

enum class SpareRoute { direct, bigon_transfer, bigon_or_trigon_transfer };

inline const char* to_string(SpareRoute r) {
  switch (r) {
    case SpareRoute::direct: return "direct";
    case SpareRoute::bigon_transfer: return "bigon-transfer";
    case SpareRoute::bigon_or_trigon_transfer: return "bigon-or-trigon-transfer";
  }
  return "?";
}

// A region whose disk misses both butterflies. Direct: a further region of
// the witness colour. Transfer: a region away from the small face
// `transfer_face`, taken in the polyhedron across that face.
struct SpareRegion {
  SpareRoute route = SpareRoute::direct;
  int region = -1;
  int transfer_face = -1;
  std::vector<int> transfer_neighbors;
  std::vector<int> transfer_perm;
  std::string justification;
};

struct Witness {
  Color color = Color::black;
  int c1 = -1, c2 = -1;
  ButterflyRegions at_c1, at_c2;
  SpareRegion spare;

  std::vector<int> regions() const { return {at_c1.minus, at_c1.plus, at_c2.minus, at_c2.plus}; }
};

struct FlypeTrace {
  int twist_region = 0;
  int crossing = -1;
  AlternatingDiagram diagram;
  InRegion image;
};

struct Verdict {
  VerdictKind kind = VerdictKind::NotCovered;
  Tunnel tunnel = Tunnel::upper;
  std::string case_label;
  int omega = -1;
  std::vector<int> word, reduced_word;
  int equivalent_crossing = -1;
  std::optional<Witness> witness;
  std::optional<FlypeTrace> flype;
  std::vector<std::string> citations;
  std::vector<std::string> notes;
};

namespace detail {

inline std::vector<int> regions_at(const AlternatingDiagram& d, int c) {
  std::set<int> s;
  for (int k = 0; k < 4; ++k) s.insert(d.region_at(c, k));
  return {s.begin(), s.end()};
}

inline int other_side(const AlternatingDiagram& d, int e, int r) {
  auto lr = d.edge_regions(e);
  return lr[0] == r ? lr[1] : lr[0];
}

inline void require_hyperbolic(const AlternatingDiagram& d) {
  require(d.crossing_count() > 0, "diagram has no crossings");
  require(is_prime(d), "diagram is not prime");
  require(is_reduced(d), "diagram is not reduced");
  require(d.count_regions(Color::black) >= 3 && d.count_regions(Color::white) >= 3,
          "diagram needs at least three regions of each colour");
}

}  // namespace detail

// The word must be realisable: consecutive edges share a region, the first
// borders a region at c1 and the last one at c2.
inline void check_transverse_word(const AlternatingDiagram& d, const TransverseArc& a) {
  d.check_crossing(a.c1);
  d.check_crossing(a.c2);
  auto start = detail::regions_at(d, a.c1);
  std::set<int> here(start.begin(), start.end());
  for (std::size_t j = 0; j < a.word.size(); ++j) {
    int e = a.word[j];
    detail::require(e >= 0 && e < d.edge_count(), "edge id " + std::to_string(e) + " out of range");
    std::set<int> next;
    for (int r : d.edge_regions(e))
      if (here.count(r)) next.insert(detail::other_side(d, e, r));
    detail::require(!next.empty(), "arc word: edge " + std::to_string(e) + " at position " + std::to_string(j) +
                                       " does not border the current region");
    here = std::move(next);
  }
  bool ends = false;
  for (int r : detail::regions_at(d, a.c2)) ends = ends || here.count(r);
  detail::require(ends, "arc word does not end in a region at crossing " + std::to_string(a.c2));
}

// Cancels back-and-forth crossings of one edge until none remain.
inline std::vector<int> reduce_bigons(const std::vector<int>& word) {
  std::vector<int> out;
  for (int e : word) {
    if (!out.empty() && out.back() == e)
      out.pop_back();
    else
      out.push_back(e);
  }
  return out;
}

// Arcs in the ball with the same ends are homotopic, so the fewest edges any
// arc from c1 to c2 must cross is a distance in the region adjacency graph.
inline int minimal_omega(const AlternatingDiagram& d, int c1, int c2) {
  std::vector<int> dist(d.region_count(), -1);
  std::deque<int> queue;
  for (int r : detail::regions_at(d, c1)) {
    dist[r] = 0;
    queue.push_back(r);
  }
  auto goal = detail::regions_at(d, c2);
  while (!queue.empty()) {
    int r = queue.front();
    queue.pop_front();
    if (std::find(goal.begin(), goal.end(), r) != goal.end()) return dist[r];
    for (int s : region_neighbors(d, r))
      if (dist[s] < 0) {
        dist[s] = dist[r] + 1;
        queue.push_back(s);
      }
  }
  throw internal_error("region graph is disconnected");
}

// `used` are the distinct regions of one colour already occupied by the two
// butterflies (four, or three in the shape where one region carries both
// second-point disks).
inline SpareRegion witness_spare_region(const AlternatingDiagram& d, const std::vector<int>& used, Color col,
                                        bool mirror = false) {
  std::set<int> taken(used.begin(), used.end());
  detail::require(taken.size() == used.size(), "witness regions are not distinct");
  detail::require(used.size() == 3 || used.size() == 4, "witness needs three or four regions");
  for (int r : used) detail::require(d.color(r) == col, "witness region R" + std::to_string(r) + " has the wrong colour");
  SpareRegion out;
  int count = d.count_regions(col);
  if (count > static_cast<int>(used.size())) {
    for (const auto& r : d.regions())
      if (r.color == col && !taken.count(r.id)) {
        out.region = r.id;
        break;
      }
    out.route = SpareRoute::direct;
    out.justification = "R" + std::to_string(out.region) + " is a further " + to_string(col) +
                        " region; same-coloured regions share no edge, so its half-space misses those of the witness";
    return out;
  }
  auto small = find_small_white_region(d, col);
  detail::ensure(small.status == SmallRegionStatus::found,
                 "no small " + std::string(to_string(opposite(col))) + " region with distinct neighbours");
  out.route = count == 3 ? SpareRoute::bigon_transfer : SpareRoute::bigon_or_trigon_transfer;
  out.transfer_face = small.region;
  out.transfer_neighbors = region_neighbors(d, small.region);
  for (const auto& r : d.regions())
    if (r.color == col && !region_adjacent(d, r.id, small.region)) {
      out.region = r.id;
      break;
    }
  detail::ensure(out.region >= 0, "every region meets the small face");
  int n = static_cast<int>(out.transfer_neighbors.size());
  int shift = gear_shift(d.color(small.region), mirror);
  for (int i = 0; i < n; ++i) out.transfer_perm.push_back(((i + shift) % n + n) % n);
  out.justification = "R" + std::to_string(out.region) + " is not adjacent to the " + std::to_string(small.sides) +
                      "-gon R" + std::to_string(small.region) +
                      "; across that face its plane is new while the neighbours' planes are permuted";
  return out;
}

struct WitnessCheck {
  bool ok = true;
  std::string reason;
};

inline WitnessCheck check_witness(const AlternatingDiagram& d, const Witness& w) {
  auto fail = [](std::string why) { return WitnessCheck{false, std::move(why)}; };
  auto regs = w.regions();
  std::set<int> distinct(regs.begin(), regs.end());
  if (distinct.size() != 4) return fail("butterfly regions are not pairwise distinct");
  for (int r : regs)
    if (d.color(r) != w.color) return fail("R" + std::to_string(r) + " has the wrong colour");
  if (!d.region(w.at_c1.minus).touches(w.c1) || !d.region(w.at_c1.plus).touches(w.c1))
    return fail("a first butterfly region misses c1");
  if (!d.region(w.at_c2.minus).touches(w.c2) || !d.region(w.at_c2.plus).touches(w.c2))
    return fail("a second butterfly region misses c2");
  const auto& s = w.spare;
  if (s.region < 0 || d.color(s.region) != w.color) return fail("spare region is missing or has the wrong colour");
  if (s.route == SpareRoute::direct) {
    if (distinct.count(s.region)) return fail("direct spare region reuses a witness region");
    for (int r : regs)
      if (region_adjacent(d, r, s.region)) return fail("spare region meets a witness region");
    return {};
  }
  if (s.transfer_face < 0 || d.color(s.transfer_face) == w.color) return fail("transfer face has the wrong colour");
  auto nb = region_neighbors(d, s.transfer_face);
  std::set<int> nbs(nb.begin(), nb.end());
  int limit = s.route == SpareRoute::bigon_transfer ? 2 : 3;
  if (static_cast<int>(nb.size()) > limit || nbs.size() != nb.size()) return fail("transfer face is not a small face with distinct neighbours");
  if (region_adjacent(d, s.region, s.transfer_face)) return fail("spare region is adjacent to the transfer face");
  if (d.count_regions(w.color) > 4)
    return fail("transfer route used although a direct spare region exists");
  return {};
}

namespace detail {

inline Verdict free_verdict(const IdealPolyhedronPair& pp, int c1, int c2, Color col) {
  Verdict v;
  v.kind = VerdictKind::FreeGeometricallyFinite;
  Witness w;
  w.color = col;
  w.c1 = c1;
  w.c2 = c2;
  w.at_c1 = butterfly_regions(pp, Polyhedron::plus, c1, col);
  w.at_c2 = butterfly_regions(pp, Polyhedron::plus, c2, col);
  w.spare = witness_spare_region(pp.diagram, w.regions(), col, pp.mirror);
  auto check = check_witness(pp.diagram, w);
  ensure(check.ok, "witness failed its own check: " + check.reason);
  v.citations = {cite::free_theorem, cite::distinct_regions, cite::nonempty_complement, cite::disjoint_half_space};
  if (w.spare.route != SpareRoute::direct) {
    v.citations.push_back(cite::small_region);
    v.citations.push_back(cite::common_plane);
  }
  v.witness = std::move(w);
  return v;
}

inline int crossing_of_edge_arc(const IdealPolyhedronPair& pp, int r, int c1, int c2, Side side) {
  const auto& reg = pp.diagram.region(r);
  int n = reg.size();
  for (int j = 0; j < n; ++j) {
    int a = reg.corners[j].crossing, b = reg.corners[(j + 1) % n].crossing;
    if ((a == c1 && b == c2) || (a == c2 && b == c1)) {
      int e = reg.edges[j];
      int cls = side == Side::upper ? pp.plus_class[e] : pp.minus_class[e];
      return pp.classes[cls].crossing;
    }
  }
  throw internal_error("endpoints are not adjacent on the region");
}

inline Verdict classify_in_region(const IdealPolyhedronPair& pp, const InRegion& a) {
  const auto& d = pp.diagram;
  detail::require(d.region(a.region).touches(a.c1) && d.region(a.region).touches(a.c2),
                  "arc endpoints must lie on region R" + std::to_string(a.region));
  Verdict v;
  if (a.c1 == a.c2) {
    v.kind = VerdictKind::Inessential;
    v.omega = 0;
    v.citations = {cite::inessential};
    return v;
  }
  if (adjacent_on_boundary(d, a.region, a.c1, a.c2)) {
    v.kind = VerdictKind::CrossingArcEquivalent;
    v.omega = 0;
    v.equivalent_crossing = crossing_of_edge_arc(pp, a.region, a.c1, a.c2, a.side);
    v.citations = {cite::crossing_arc_excluded};
    v.notes.push_back("the arc is homotopic to an edge of R" + std::to_string(a.region) + ", i.e. to the crossing arc at c" +
                      std::to_string(v.equivalent_crossing));
    return v;
  }
  v = free_verdict(pp, a.c1, a.c2, opposite(d.color(a.region)));
  v.case_label = "II-2";
  v.omega = 0;
  return v;
}

}  // namespace detail

inline Verdict classify_alternating_pair(const AlternatingDiagram& d, const ArcSpec& arc, bool mirror = false) {
  detail::require_hyperbolic(d);
  auto pp = build_polyhedra(d, mirror);
  if (const auto* x = std::get_if<CrossingArc>(&arc)) {
    d.check_crossing(x->crossing);
    Verdict v;
    v.kind = VerdictKind::NotCovered;
    v.equivalent_crossing = x->crossing;
    v.citations = {cite::crossing_arc_excluded};
    v.notes.push_back("crossing arcs of general diagrams are outside the theorem; use the 2-bridge classifier");
    return v;
  }
  if (const auto* x = std::get_if<InRegion>(&arc)) {
    d.check_crossing(x->c1);
    d.check_crossing(x->c2);
    return detail::classify_in_region(pp, *x);
  }
  const auto& t = std::get<TransverseArc>(arc);
  detail::require(!t.word.empty(), "a transverse arc needs a nonempty word; use an in-region arc");
  check_transverse_word(d, t);
  auto reduced = reduce_bigons(t.word);
  int omega = minimal_omega(d, t.c1, t.c2);
  auto decorate = [&](Verdict v) {
    v.word = t.word;
    v.reduced_word = reduced;
    v.omega = omega;
    if (static_cast<int>(reduced.size()) > omega)
      v.notes.push_back("greedy bigon reduction left " + std::to_string(reduced.size()) + " crossings; the minimum is " +
                        std::to_string(omega));
    return v;
  };
  if (t.c1 == t.c2) {
    Verdict v;
    v.kind = VerdictKind::Inessential;
    v.citations = {cite::inessential};
    return decorate(std::move(v));
  }
  if (omega == 0) {
    // Both ends lie on one region: prefer one where they are not consecutive.
    int pick = -1;
    for (int r : detail::regions_at(d, t.c1))
      if (d.region(r).touches(t.c2) && (pick < 0 || !adjacent_on_boundary(d, r, t.c1, t.c2))) pick = r;
    auto v = detail::classify_in_region(pp, InRegion{pick, t.c1, t.c2, t.side});
    v.notes.push_back("the arc can be pushed into region R" + std::to_string(pick));
    return decorate(std::move(v));
  }
  auto v = detail::free_verdict(pp, t.c1, t.c2, Color::black);
  v.case_label = "II-1";
  return decorate(std::move(v));
}

// The twist region A_i holding a crossing of the standard diagram.
inline int twist_region_of(const AlternatingDiagram& d, int c) {
  d.check_crossing(c);
  detail::require(!d.twist_labels().empty(), "diagram carries no twist labels");
  return d.twist_labels()[c].region;
}

inline Verdict classify_2bridge_pair(const TwistSequence& seq, const ArcSpec& arc, bool mirror = false) {
  seq.validate();
  auto d = two_bridge_diagram(seq);
  int crossing = -1;
  if (const auto* x = std::get_if<CrossingArc>(&arc)) {
    crossing = x->crossing;
  } else {
    auto v = classify_alternating_pair(d, arc, mirror);
    if (v.kind != VerdictKind::CrossingArcEquivalent) return v;
    crossing = v.equivalent_crossing;
  }
  int i = twist_region_of(d, crossing);
  Verdict v;
  if (i == 1 || i == seq.n()) {
    v.kind = VerdictKind::GeneratesLinkGroup;
    v.tunnel = i == 1 ? Tunnel::upper : Tunnel::lower;
    v.equivalent_crossing = crossing;
    v.citations = {cite::tunnel_theorem};
    v.notes.push_back("crossing arc at c" + std::to_string(crossing) + " in A_" + std::to_string(i) + " is the " +
                      to_string(v.tunnel) + " tunnel");
    return v;
  }
  auto f = flype(seq, i, CrossingArc{crossing});
  v = classify_alternating_pair(f.diagram, f.arc, mirror);
  detail::ensure(v.kind == VerdictKind::FreeGeometricallyFinite,
                 "flyped arc is not in the free case (" + std::string(to_string(v.kind)) + ")");
  v.citations.insert(v.citations.begin() + 1, cite::tunnel_theorem);
  v.citations.push_back(cite::flype);
  v.flype = FlypeTrace{i, crossing, f.diagram, f.arc};
  v.equivalent_crossing = crossing;
  return v;
}

}  // namespace cuspcubes

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cuspcubes/cubing.hpp"
#include "cuspcubes/decide.hpp"
#include "cuspcubes/farey.hpp"
#include "cuspcubes/pingpong.hpp"
#include "cuspcubes/polyhedra.hpp"
#include "decide_oracles.hpp"
#include "diagram_oracles.hpp"
#include "oracles.hpp"

using namespace cuspcubes;

namespace {

const std::string kData = CUSPCUBES_DATA_DIR;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first failure; later checks are skipped once one fails.
struct Checker {
  Outcome out;
  std::ostringstream note;
  bool check(bool cond, const std::string& what) {
    if (!cond && out.ok) {
      out.ok = false;
      out.detail = what;
    }
    return cond;
  }
  Outcome done() {
    if (out.ok) out.detail = note.str();
    return out;
  }
};

std::vector<oracle::CorpusEntry> pd_corpus() { return oracle::pd_corpus(kData + "/pd"); }

std::vector<oracle::CorpusEntry> full_corpus() {
  auto out = pd_corpus();
  for (const auto& s : oracle::twist_sequences(4, 8)) out.push_back({"C(" + s.str() + ")", two_bridge_diagram(s)});
  return out;
}

std::vector<Slope> proper_fractions(integer max_p) {
  std::vector<Slope> out;
  for (const auto& r : oracle::slopes_up_to(max_p, -1, 1))
    if (r.q != 0 && std::abs(r.q) < r.p) out.push_back(r);
  return out;
}

Outcome covering_distance_law() {
  Checker c;
  int n = 0;
  for (const auto& r : proper_fractions(30)) {
    int expect = 2 * std::min(farey_distance(kInfinity, r), farey_distance(kZero, r));
    if (!c.check(farey_distance(kInfinity, covering_slope(r)) == expect, "distance law fails at " + to_string(r))) break;
    ++n;
  }
  c.note << n << " slopes with 0 < |q| < p <= 30";
  return c.done();
}

Outcome covering_congruence_law() {
  Checker c;
  int n = 0;
  for (const auto& r : oracle::slopes_up_to(50, -2, 2)) {
    if (r == kZero || r.is_integer()) continue;
    auto rt = covering_slope(r);
    // q~^2 = 1 (mod 2p~), computed here directly.
    integer m = 2 * rt.p;
    if (!c.check(((rt.q % m) * (rt.q % m) % m + m) % m == 1 % m, "congruence fails at " + to_string(r))) break;
    ++n;
  }
  c.note << n << " non-integral slopes with p <= 50, |r| <= 2";
  return c.done();
}

Outcome covering_oracle_agreement() {
  Checker c;
  int n = 0;
  for (const auto& r : proper_fractions(20)) {
    if (!c.check(oracle::covering_matrix_search(r, covering_slope(r)), "no Aut+ map realises " + to_string(r))) break;
    ++n;
  }
  c.note << n << " slopes with p <= 20 matched by matrix search";
  return c.done();
}

Outcome hyperbolicity_desk_checks() {
  Checker c;
  c.check(two_bridge_hyperbolic(Slope{2, 5}), "K(2/5) should be hyperbolic");
  c.check(!two_bridge_hyperbolic(Slope{1, 3}), "K(1/3) should not be hyperbolic");
  for (integer n = -10; n <= 10; ++n) {
    Slope r = n == 0 ? kInfinity : reduce_slope(1, n);
    c.check(!rational_p3_hyperbolic(r), "rational link 1/" + std::to_string(n) + " flagged hyperbolic");
  }
  c.note << "2/5, 1/3 and 1/n for |n| <= 10";
  return c.done();
}

Outcome cubing_counts() {
  Checker c;
  auto pd = pd_corpus();
  int prime = 0;
  for (const auto& e : pd) prime += is_prime(e.diagram);
  c.check(prime >= 10, "PD corpus has fewer than 10 prime diagrams");
  auto all = pd;
  auto seqs = oracle::twist_sequences(12, 12);
  for (const auto& s : seqs) all.push_back({"C(" + s.str() + ")", two_bridge_diagram(s)});
  for (const auto& [name, d] : all) {
    auto cx = build_cubing(d);
    int n = d.crossing_count();
    bool ok = static_cast<int>(cx.cubes.size()) == 2 * n && cx.inner_vertex_count() == 2 && cx.inner_edge_count() == n + 2 &&
              cx.boundary_square_count() == 2 * n;
    for (const auto& t : boundary_cubings(cx, d)) ok = ok && t.euler == 0;
    if (!c.check(ok, "counts fail for " + name)) break;
  }
  c.note << prime << " PD diagrams and " << seqs.size() << " twist sequences with sum <= 12";
  return c.done();
}

Outcome npc_verification() {
  Checker c;
  auto corpus = full_corpus();
  for (const auto& [name, d] : corpus) {
    auto rep = verify_npc(build_cubing(d));
    if (!c.check(rep.ok, "verify_npc rejects " + name)) break;
  }
  int corrupted = 0;
  for (const auto& [name, d] : pd_corpus()) {
    auto cx = build_cubing(d);
    for (int k = 0; k < static_cast<int>(cx.gluings.size()); ++k)
      for (auto kind : {Corruption::remove, Corruption::twist}) {
        auto rep = verify_npc(corrupt(cx, {kind, k}), 1);
        c.check(!rep.ok && !rep.failures.empty() && rep.failures[0].vertex >= 0,
                name + " corruption " + std::to_string(k) + " not located");
        ++corrupted;
      }
  }
  c.check(corrupted >= 10, "fewer than 10 corruptions");
  c.note << corpus.size() << " complexes pass, " << corrupted << " corrupted copies fail at a vertex";
  return c.done();
}

Outcome adjacency_law() {
  Checker c;
  long long pairs = 0;
  for (const auto& [name, d] : full_corpus()) {
    auto pp = build_polyhedra(d);
    auto cx = build_cubing(d);
    int vp = cx.find_vertex(VertexKind::inner_plus), vm = cx.find_vertex(VertexKind::inner_minus);
    for (int r1 = 0; r1 < d.region_count(); ++r1)
      for (int r2 = 0; r2 < d.region_count(); ++r2) {
        if (r1 == r2) continue;
        bool adjacent = oracle::shares_edge(d, r1, r2);
        bool ok = halfspace_disjoint(pp, Polyhedron::plus, r1, r2) == !adjacent &&
                  halfspace_disjoint(pp, Polyhedron::minus, r1, r2) == !adjacent &&
                  (link_angle_class(cx, vp, r1, r2) == LinkAngle::orthogonal) == adjacent &&
                  (link_angle_class(cx, vm, r1, r2) == LinkAngle::orthogonal) == adjacent;
        c.check(ok, name + " regions " + std::to_string(r1) + "," + std::to_string(r2));
        ++pairs;
      }
  }
  c.note << pairs << " ordered region pairs";
  return c.done();
}

Outcome gear_integrity() {
  Checker c;
  long long faces = 0;
  for (const auto& [name, d] : full_corpus())
    for (bool mirror : {false, true}) {
      auto pp = build_polyhedra(d, mirror);
      c.check(static_cast<int>(pp.classes.size()) == d.crossing_count(), name + ": class count");
      std::vector<int> plus(d.crossing_count()), minus(d.crossing_count());
      for (int e = 0; e < d.edge_count(); ++e) {
        ++plus[pp.classes[pp.plus_class[e]].crossing];
        ++minus[pp.classes[pp.minus_class[e]].crossing];
      }
      for (int x = 0; x < d.crossing_count(); ++x) c.check(plus[x] == 2 && minus[x] == 2, name + ": preimages at c" + std::to_string(x));
      for (const auto& r : d.regions()) {
        auto t = face_transfer(pp, r.id);
        std::vector<int> id(r.size()), acc;
        std::iota(id.begin(), id.end(), 0);
        acc = id;
        for (int k = 0; k < r.size(); ++k) acc = compose(acc, t.perm);
        c.check(acc == id && std::abs(t.shift) == 1, name + ": face transfer of R" + std::to_string(r.id));
        ++faces;
      }
    }
  c.note << faces << " face transfers under both conventions";
  return c.done();
}

Outcome pingpong_certificates() {
  using Q = Rational;
  using M = MobiusMap<Q>;
  using C = Complex<Q>;
  auto mat = [](int a, int b, int c, int d) { return M{C(a), C(b), C(c), C(d)}; };
  Checker c;
  M m1 = mat(1, 0, 4, 1), m2 = mat(9, -16, 4, -7);
  auto cert = pingpong_certificate(m1, m2);
  c.check(cert.kind == PingPongKind::FreeCertified, "certified pair not FreeCertified");
  if (cert.butterflies.size() == 2) {
    std::vector<std::string> centers;
    for (const auto& b : cert.butterflies)
      for (const auto* disk : {&b.neg, &b.pos}) {
        c.check(disk->radius_squared == Q(1) / 16, "radius is not 1/4");
        centers.push_back(to_string(disk->center));
      }
    std::sort(centers.begin(), centers.end());
    c.check(centers == std::vector<std::string>{"-1/4", "1/4", "7/4", "9/4"}, "disk centres differ");
  }
  auto words = free_word_sanity(m1, m2, 10);
  c.check(words.ok, "identity word " + words.identity_word);
  c.check(pingpong_certificate(m1, m1).kind == PingPongKind::Commuting, "commuting pair");
  c.check(pingpong_certificate(mat(1, 0, 1, 1), mat(2, -1, 1, 0)).kind == PingPongKind::Inconclusive, "overlapping pair");
  c.note << words.checked << " reduced words up to length 10";
  return c.done();
}

Outcome decision_procedure() {
  Checker c;
  int tunnels = 0, free = 0, transfers = 0;
  auto seqs = oracle::twist_sequences(4, 10);
  for (const auto& s : seqs) {
    auto d = two_bridge_diagram(s);
    for (int x = 0; x < d.crossing_count(); ++x) {
      int i = d.twist_labels()[x].region;
      auto v = classify_2bridge_pair(s, CrossingArc{x});
      std::string where = "C(" + s.str() + ") c" + std::to_string(x);
      if (i == 1 || i == s.n()) {
        c.check(v.kind == VerdictKind::GeneratesLinkGroup && v.tunnel == (i == 1 ? Tunnel::upper : Tunnel::lower), where);
        ++tunnels;
        continue;
      }
      if (!c.check(v.kind == VerdictKind::FreeGeometricallyFinite && v.witness && v.flype, where)) continue;
      auto why = oracle::witness_problem(v.flype->diagram, *v.witness);
      c.check(why.empty(), where + ": " + why);
      ++free;
      transfers += v.witness->spare.route != SpareRoute::direct;
    }
  }
  c.note << seqs.size() << " sequences: " << tunnels << " tunnel arcs, " << free << " free with witnesses (" << transfers
         << " via a small face)";
  return c.done();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all = {
      {1, "covering-slope distance law", 5, covering_distance_law},
      {2, "covering-slope congruence", 5, covering_congruence_law},
      {3, "covering-slope Aut+ oracle", 30, covering_oracle_agreement},
      {4, "hyperbolicity desk checks", 1, hyperbolicity_desk_checks},
      {5, "cubing counts", 10, cubing_counts},
      {6, "NPC verification and corruptions", 30, npc_verification},
      {7, "adjacency law", 10, adjacency_law},
      {8, "gear-rule integrity", 5, gear_integrity},
      {9, "ping-pong certificates", 30, pingpong_certificates},
      {10, "decision procedure", 30, decision_procedure},
  };
  int failed = 0;
  for (const auto& cr : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > cr.limit_s) o = {false, "took longer than " + std::to_string(cr.limit_s) + " s"};
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << cr.id << " (" << cr.name << ", " << std::fixed
              << std::setprecision(2) << secs << " s): " << o.detail << "\n";
  }
  return failed == 0 ? 0 : 1;
}

// Batch front end: every command prints one JSON document (or a table with
// --pretty). Exit status: 0 check passed, 1 check failed, 2 bad input.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cuspcubes/farey.hpp"
#include "cuspcubes/report.hpp"

using namespace cuspcubes;

namespace {

struct RunConfig {
  bool pretty = false;
  bool mirror = false;
  unsigned threads = 0;
  std::string mode;  // exact | float
};

struct DiagramSource {
  std::string pd;
  std::string two_bridge;
  std::string corpus;
};

void print_pretty(const json& j, const std::string& indent, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object()) {
      out << indent << it.key() << ":\n";
      print_pretty(v, indent + "  ", out);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << indent << it.key() << ":\n";
      for (const auto& item : v) {
        std::string first = indent + "  - ";
        std::ostringstream row;
        bool lead = true;
        for (auto f = item.begin(); f != item.end(); ++f) {
          row << (lead ? "" : ", ") << f.key() << "=" << (f.value().is_string() ? f.value().get<std::string>() : f.value().dump());
          lead = false;
        }
        out << first << row.str() << "\n";
      }
    } else {
      out << indent << std::left << std::setw(22) << it.key() << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(const RunConfig& cfg, const json& j) {
  if (cfg.pretty)
    print_pretty(j, "", std::cout);
  else
    std::cout << j.dump() << "\n";
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      detail::require(used == item.size(), "");
    } catch (...) {
      throw invalid_input("not an integer list: " + text);
    }
  }
  return out;
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (...) {
  }
  throw invalid_input("bad " + what + ": " + text);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

// Strips a one-letter prefix such as "R" or "c".
int tagged(const std::string& text, char tag, const std::string& what) {
  std::string s = !text.empty() && (text[0] == tag || text[0] == std::toupper(tag)) ? text.substr(1) : text;
  return parse_int(s, what);
}

void add_source(CLI::App* cmd, DiagramSource& src, bool corpus) {
  auto* pd = cmd->add_option("--pd", src.pd, "diagram JSON file");
  auto* tb = cmd->add_option("--two-bridge", src.two_bridge, "twist sequence a1,...,an");
  pd->excludes(tb);
  if (corpus) {
    auto* cp = cmd->add_option("--corpus", src.corpus, "directory of diagram JSON files");
    cp->excludes(pd)->excludes(tb);
  }
}

std::optional<TwistSequence> twist_of(const DiagramSource& src) {
  if (src.two_bridge.empty()) return std::nullopt;
  return TwistSequence(parse_int_list(src.two_bridge));
}

AlternatingDiagram diagram_of(const DiagramSource& src) {
  if (auto s = twist_of(src)) return two_bridge_diagram(*s);
  detail::require(!src.pd.empty(), "give --pd FILE or --two-bridge a1,...,an");
  return load_diagram(src.pd);
}

std::vector<std::string> corpus_files(const std::string& dir) {
  detail::require(std::filesystem::is_directory(dir), "not a directory: " + dir);
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

// Runs job on every file with at most `threads` in flight; results keep file order.
template <class Job>
std::vector<json> fan_out(const std::vector<std::string>& files, unsigned threads, Job job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<json> results(files.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, files.size()); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < files.size(); i = next++) {
        try {
          results[i] = job(files[i]);
        } catch (const std::exception& e) {
          results[i] = {{"file", files[i]}, {"error", e.what()}};
        }
      }
    });
  for (auto& th : pool) th.join();
  return results;
}

// ---- farey ----

int cmd_farey(const RunConfig& cfg, const std::string& sub, const std::vector<std::string>& args, bool oriented, bool p3) {
  auto need = [&](std::size_t n) {
    detail::require(args.size() == n, "farey " + sub + " takes " + std::to_string(n) + " slope(s)");
  };
  json out;
  bool passed = true;
  if (sub == "dist") {
    need(2);
    out = {{"distance", farey_distance(parse_slope(args[0]), parse_slope(args[1]))}};
  } else if (sub == "cf") {
    need(1);
    auto cf = cf_expand(parse_slope(args[0]));
    out = {{"cf", to_string(cf)}, {"a0", cf.a0}, {"terms", cf.terms}};
  } else if (sub == "covering-slope") {
    need(1);
    auto rt = covering_slope(parse_slope(args[0]));
    out = {{"r_tilde", to_string(rt)}, {"congruence", covering_congruence(rt)}};
    passed = covering_congruence(rt);
  } else if (sub == "classify-2bridge") {
    need(2);
    auto w = two_bridge_equivalent(parse_slope(args[0]), parse_slope(args[1]), oriented);
    out = {{"equivalent", w.has_value()}, {"oriented", oriented}};
    if (w) out["witness"] = {{w->a, w->b}, {w->c, w->d}};
    passed = w.has_value();
  } else if (sub == "classify-p3") {
    need(2);
    passed = rational_p3_classify(parse_slope(args[0]), parse_slope(args[1]), oriented);
    out = {{"equivalent", passed}, {"oriented", oriented}};
  } else if (sub == "hyperbolic") {
    need(1);
    auto r = parse_slope(args[0]);
    passed = p3 ? rational_p3_hyperbolic(r) : two_bridge_hyperbolic(r);
    out = {{"hyperbolic", passed}, {"family", p3 ? "rational-P3" : "two-bridge"}};
  } else {
    throw invalid_input("unknown farey subcommand " + sub);
  }
  emit(cfg, out);
  return passed ? 0 : 1;
}

// ---- cubing ----

json cubing_json(const AlternatingDiagram& d, std::optional<int> corrupt_index, const std::string& corrupt_kind, unsigned threads,
                 const std::string& emit_path) {
  auto cx = build_cubing(d);
  if (corrupt_index) {
    Corruption how;
    how.kind = corrupt_kind == "twist" ? Corruption::twist : Corruption::remove;
    how.index = *corrupt_index;
    cx = corrupt(cx, how);
  }
  auto npc = verify_npc(cx, threads);
  auto out = cubing_report(cx, d, npc);
  if (corrupt_index) out["corruption"] = {{"kind", corrupt_kind}, {"index", *corrupt_index}};
  if (!emit_path.empty()) {
    std::ofstream f(emit_path);
    detail::require(static_cast<bool>(f), "cannot write " + emit_path);
    f << complex_to_json(cx).dump(1) << "\n";
  }
  return out;
}

bool cubing_passed(const json& r) {
  if (r.contains("error")) return false;
  int c = r["crossings"];
  bool tori = std::all_of(r["tori"].begin(), r["tori"].end(), [](const json& t) { return t["euler"] == 0; });
  return r["npc"] == true && r["cubes"] == 2 * c && r["inner_vertices"] == 2 && r["inner_edges"] == c + 2 &&
         r["boundary_squares"] == 2 * c && tori;
}

// ---- decide ----

ArcSpec arc_from_json(const json& j, const AlternatingDiagram& d) {
  detail::require(j.is_object() && j.contains("type"), "arc JSON needs a \"type\"");
  std::string type = j["type"];
  Side side = j.value("side", std::string("upper")) == "lower" ? Side::lower : Side::upper;
  if (type == "crossing_arc") {
    if (j.contains("crossing")) return CrossingArc{j["crossing"].get<int>()};
    int region = j.at("twist_region"), index = j.at("index");
    for (int c = 0; c < d.crossing_count(); ++c)
      if (!d.twist_labels().empty() && d.twist_labels()[c].region == region && d.twist_labels()[c].index == index)
        return CrossingArc{c};
    throw invalid_input("no crossing A" + std::to_string(region) + ":" + std::to_string(index));
  }
  if (type == "in_region") return InRegion{j.at("region"), j.at("c1"), j.at("c2"), side};
  if (type == "transverse") return TransverseArc{j.at("c1"), j.at("c2"), j.at("word").get<std::vector<int>>(), side};
  throw invalid_input("unknown arc type " + type);
}

// A2:0 (twist region 2, first crossing) or c5 (crossing id).
json crossing_arc_json(const std::string& text) {
  if (!text.empty() && (text[0] == 'A' || text[0] == 'a')) {
    auto parts = split(text.substr(1), ':');
    detail::require(parts.size() == 2, "crossing arc must look like A2:0 or c5");
    return {{"type", "crossing_arc"}, {"twist_region", parse_int(parts[0], "twist region")}, {"index", parse_int(parts[1], "index")}};
  }
  return {{"type", "crossing_arc"}, {"crossing", tagged(text, 'c', "crossing")}};
}

// R3:c0:c2 with an optional :lower.
json in_region_json(const std::string& text) {
  auto parts = split(text, ':');
  detail::require(parts.size() == 3 || parts.size() == 4, "in-region arc must look like R3:c0:c2[:lower]");
  json j = {{"type", "in_region"},
            {"region", tagged(parts[0], 'r', "region")},
            {"c1", tagged(parts[1], 'c', "crossing")},
            {"c2", tagged(parts[2], 'c', "crossing")}};
  if (parts.size() == 4) j["side"] = parts[3];
  return j;
}

// c0:c4:3,7 crossing the listed edges.
json transverse_json(const std::string& text) {
  auto parts = split(text, ':');
  detail::require(parts.size() == 3, "transverse arc must look like c0:c4:e1,e2,...");
  return {{"type", "transverse"},
          {"c1", tagged(parts[0], 'c', "crossing")},
          {"c2", tagged(parts[1], 'c', "crossing")},
          {"word", parse_int_list(parts[2])}};
}

// ---- pingpong ----

template <class T>
MobiusMap<T> parse_map(const std::string& text) {
  auto parts = split(text, ',');
  detail::require(parts.size() == 4, "a matrix is four comma-separated entries a,b,c,d");
  return {parse_complex<T>(parts[0]), parse_complex<T>(parts[1]), parse_complex<T>(parts[2]), parse_complex<T>(parts[3])};
}

template <class T>
int run_pingpong(const RunConfig& cfg, const std::string& m1, const std::string& m2, int words) {
  auto a = parse_map<T>(m1), b = parse_map<T>(m2);
  auto cert = pingpong_certificate(a, b);
  std::optional<WordCheck> wc;
  if (words > 0) wc = free_word_sanity(a, b, words);
  emit(cfg, certificate_to_json(cert, wc));
  bool ok = cert.kind != PingPongKind::Inconclusive;
  if (wc && cert.kind == PingPongKind::FreeCertified) ok = ok && wc->ok;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cuspcubes: Farey classification, cubings, polyhedra and meridian-pair decisions"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_flag("--pretty", cfg.pretty, "human-readable output");
  app.add_flag("--mirror", cfg.mirror, "use the mirror gear/butterfly convention");
  app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)");

  auto* farey = app.add_subcommand("farey", "Farey tessellation queries");
  std::string farey_sub;
  std::vector<std::string> slopes;
  bool oriented = false, p3 = false;
  farey->add_option("query", farey_sub, "dist | cf | covering-slope | classify-2bridge | classify-p3 | hyperbolic")->required();
  farey->add_option("slopes", slopes, "slopes q/p or 1/0");
  farey->add_flag("--oriented", oriented, "orientation-preserving classification");
  farey->add_flag("--p3", p3, "hyperbolic: the rational link in P3 instead of the 2-bridge link");

  auto* cubing = app.add_subcommand("cubing", "build and verify the cubed decomposition");
  DiagramSource cube_src;
  std::string emit_complex, corrupt_kind = "remove";
  std::optional<int> corrupt_index;
  add_source(cubing, cube_src, true);
  cubing->add_option("--emit-complex", emit_complex, "write the complex as JSON");
  cubing->add_option("--corrupt", corrupt_index, "apply corruption k before verifying");
  cubing->add_option("--corrupt-kind", corrupt_kind, "remove | twist")->check(CLI::IsMember({"remove", "twist"}));

  auto* poly = app.add_subcommand("polyhedra", "checkerboard ideal polyhedra and their gluing");
  DiagramSource poly_src;
  std::string dot_path;
  add_source(poly, poly_src, false);
  poly->add_option("--dot", dot_path, "write the edge-class graph in Graphviz format");

  auto* decide = app.add_subcommand("decide", "classify a meridian pair");
  DiagramSource dec_src;
  std::string crossing_arc, in_region, transverse, input_path;
  add_source(decide, dec_src, false);
  auto* o1 = decide->add_option("--crossing-arc", crossing_arc, "A<i>:<j> or c<id>");
  auto* o2 = decide->add_option("--in-region", in_region, "R<r>:c<a>:c<b>[:lower]");
  auto* o3 = decide->add_option("--transverse", transverse, "c<a>:c<b>:e1,e2,...");
  auto* o4 = decide->add_option("--input", input_path, "JSON {pd | rotation | twist_sequence, arc}");
  o1->excludes(o2)->excludes(o3)->excludes(o4);
  o2->excludes(o3)->excludes(o4);
  o3->excludes(o4);

  auto* ping = app.add_subcommand("pingpong", "round-disk ping-pong certificate for two parabolics");
  std::string m1, m2;
  int words = 0;
  ping->add_option("--m1", m1, "a,b,c,d with Gaussian-rational entries like 1+2i or 3/4")->required();
  ping->add_option("--m2", m2, "a,b,c,d")->required();
  ping->add_option("--words", words, "check reduced words up to this length");
  ping->add_option("--mode", cfg.mode, "exact | float (default from CUSPCUBES_MODE)")->check(CLI::IsMember({"exact", "float"}));

  auto* svg = app.add_subcommand("svg", "draw the circle pattern");
  DiagramSource svg_src;
  std::string svg_out;
  add_source(svg, svg_src, false);
  svg->add_option("-o,--output", svg_out, "SVG file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*farey) return cmd_farey(cfg, farey_sub, slopes, oriented, p3);

    if (*cubing) {
      if (!cube_src.corpus.empty()) {
        auto results = fan_out(corpus_files(cube_src.corpus), cfg.threads, [&](const std::string& f) {
          auto r = cubing_json(load_diagram(f), corrupt_index, corrupt_kind, 1, "");
          r["file"] = f;
          return r;
        });
        bool all = std::all_of(results.begin(), results.end(), cubing_passed);
        emit(cfg, {{"schema", "cuspcubes.corpus/1"}, {"passed", all}, {"results", results}});
        return all ? 0 : 1;
      }
      auto r = cubing_json(diagram_of(cube_src), corrupt_index, corrupt_kind, cfg.threads, emit_complex);
      emit(cfg, r);
      return cubing_passed(r) ? 0 : 1;
    }

    if (*poly) {
      auto pp = build_polyhedra(diagram_of(poly_src), cfg.mirror);
      if (!dot_path.empty()) {
        std::ofstream f(dot_path);
        detail::require(static_cast<bool>(f), "cannot write " + dot_path);
        f << edge_class_dot(pp);
      }
      emit(cfg, polyhedra_to_json(pp));
      return 0;
    }

    if (*decide) {
      json arc;
      if (!input_path.empty()) {
        auto in = read_json_file(input_path);
        detail::require(in.contains("arc"), "input needs an \"arc\"");
        arc = in["arc"];
        if (in.contains("twist_sequence")) {
          std::vector<int> a = in["twist_sequence"];
          std::string s;
          for (int x : a) s += (s.empty() ? "" : ",") + std::to_string(x);
          dec_src.two_bridge = s;
        } else {
          auto d = diagram_from_json(in.contains("diagram") ? in["diagram"] : in);
          auto v = classify_alternating_pair(d, arc_from_json(arc, d), cfg.mirror);
          emit(cfg, verdict_to_json(v));
          return 0;
        }
      } else if (!crossing_arc.empty()) {
        arc = crossing_arc_json(crossing_arc);
      } else if (!in_region.empty()) {
        arc = in_region_json(in_region);
      } else if (!transverse.empty()) {
        arc = transverse_json(transverse);
      } else {
        throw invalid_input("give an arc: --crossing-arc, --in-region, --transverse or --input");
      }
      auto d = diagram_of(dec_src);
      auto parsed = arc_from_json(arc, d);
      Verdict v = twist_of(dec_src) ? classify_2bridge_pair(*twist_of(dec_src), parsed, cfg.mirror)
                                    : classify_alternating_pair(d, parsed, cfg.mirror);
      emit(cfg, verdict_to_json(v));
      return 0;
    }

    if (*ping) {
      std::string mode = cfg.mode;
      if (mode.empty()) {
        const char* env = std::getenv("CUSPCUBES_MODE");
        mode = env ? env : "exact";
      }
      detail::require(mode == "exact" || mode == "float", "CUSPCUBES_MODE must be exact or float");
      return mode == "exact" ? run_pingpong<Rational>(cfg, m1, m2, words) : run_pingpong<double>(cfg, m1, m2, words);
    }

    if (*svg) {
      auto text = circle_pattern_svg(diagram_of(svg_src));
      if (svg_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(svg_out);
        detail::require(static_cast<bool>(f), "cannot write " + svg_out);
        f << text;
      }
      return 0;
    }
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

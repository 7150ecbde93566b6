#pragma once

// Combinatorial descriptions of proper arcs in the link exterior, drawn on
// the boundary sphere of one checkerboard polyhedron.

#include <string>
#include <variant>
#include <vector>

namespace cuspcubes {

// Which ball the arc is pushed into: upper arcs end on overpasses, lower arcs
// on underpasses.
enum class Side { upper, lower };

inline const char* to_string(Side s) { return s == Side::upper ? "upper" : "lower"; }

struct CrossingArc {
  int crossing = 0;
};

// An arc inside region `region` from crossing c1 to crossing c2.
struct InRegion {
  int region = 0;
  int c1 = 0, c2 = 0;
  Side side = Side::upper;
};

// An arc from c1 to c2 crossing the listed edges of D transversally.
struct TransverseArc {
  int c1 = 0, c2 = 0;
  std::vector<int> word;
  Side side = Side::upper;
};

using ArcSpec = std::variant<CrossingArc, InRegion, TransverseArc>;

}  // namespace cuspcubes

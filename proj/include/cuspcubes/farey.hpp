#pragma once

// Slopes in Q u {inf}, the Farey graph, continued fractions, and the
// classification predicates for 2-bridge links and rational links in P^3.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cuspcubes/error.hpp"

namespace cuspcubes {

using integer = std::int64_t;

namespace detail {

inline integer checked(__int128 v) {
  require(v <= INT64_MAX && v >= INT64_MIN, "integer overflow in slope arithmetic");
  return static_cast<integer>(v);
}

inline integer floor_div(integer a, integer b) {
  integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline integer mod(integer a, integer m) {
  integer r = a % m;
  return r < 0 ? r + m : r;
}

// Returns g and sets x, y with a*x + b*y = g = gcd(a, b) >= 0.
inline integer ext_gcd(integer a, integer b, integer& x, integer& y) {
  integer x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    integer t = a / b;
    integer r = a - t * b;
    a = b;
    b = r;
    integer nx = x0 - t * x1, ny = y0 - t * y1;
    x0 = x1;
    y0 = y1;
    x1 = nx;
    y1 = ny;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

}  // namespace detail

// Reduced q/p with p >= 0; infinity is 1/0.
struct Slope {
  integer q = 1;
  integer p = 0;

  bool is_infinity() const { return p == 0; }
  bool is_integer() const { return p == 1; }
  friend bool operator==(const Slope&, const Slope&) = default;
  // Lexicographic on (q, p); for use as a container key, not numeric order.
  friend bool operator<(const Slope& a, const Slope& b) {
    return a.q != b.q ? a.q < b.q : a.p < b.p;
  }
};

inline Slope reduce_slope(integer q, integer p) {
  detail::require(q != 0 || p != 0, "slope 0/0 is undefined");
  if (p == 0) return Slope{1, 0};
  integer g = std::gcd(q, p);
  q /= g;
  p /= g;
  if (p < 0) {
    q = -q;
    p = -p;
  }
  return Slope{q, p};
}

inline const Slope kInfinity{1, 0};
inline const Slope kZero{0, 1};

inline std::string to_string(const Slope& s) {
  return std::to_string(s.q) + "/" + std::to_string(s.p);
}

inline Slope parse_slope(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return kInfinity;
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      integer q = std::stoll(text, &used);
      detail::require(used == text.size(), "bad slope '" + text + "'");
      return reduce_slope(q, 1);
    }
    std::string qs = text.substr(0, slash), ps = text.substr(slash + 1);
    integer q = std::stoll(qs, &used);
    detail::require(used == qs.size(), "bad slope '" + text + "'");
    integer p = std::stoll(ps, &used);
    detail::require(used == ps.size(), "bad slope '" + text + "'");
    return reduce_slope(q, p);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const invalid_input*>(&e)) throw;
    throw invalid_input("bad slope '" + text + "'");
  }
}

inline Slope negate(const Slope& s) { return s.is_infinity() ? s : Slope{-s.q, s.p}; }

inline Slope reciprocal(const Slope& s) { return reduce_slope(s.p, s.q); }

inline integer farey_det(const Slope& r, const Slope& s) {
  return detail::checked(static_cast<__int128>(r.q) * s.p - static_cast<__int128>(s.q) * r.p);
}

inline bool farey_adjacent(const Slope& r, const Slope& s) {
  detail::require(!(r == s), "farey_adjacent: a slope is not adjacent to itself");
  integer d = farey_det(r, s);
  return d == 1 || d == -1;
}

// Element of PGL(2,Z) acting by x -> (a x + b) / (c x + d).
struct FareyAut {
  integer a = 1, b = 0, c = 0, d = 1;

  integer det() const { return a * d - b * c; }
  bool orientation_preserving() const { return det() == 1; }

  Slope operator()(const Slope& x) const {
    __int128 num = static_cast<__int128>(a) * x.q + static_cast<__int128>(b) * x.p;
    __int128 den = static_cast<__int128>(c) * x.q + static_cast<__int128>(d) * x.p;
    return reduce_slope(detail::checked(num), detail::checked(den));
  }

  friend bool operator==(const FareyAut& x, const FareyAut& y) {
    bool same = x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    bool neg = x.a == -y.a && x.b == -y.b && x.c == -y.c && x.d == -y.d;
    return same || neg;
  }
};

// An element of SL(2,Z) taking r to infinity.
inline FareyAut move_to_infinity(const Slope& r) {
  if (r.is_infinity()) return FareyAut{};
  // eta = [[alpha, beta], [p, -q]] with alpha*(-q) - beta*p = 1.
  integer x = 0, y = 0;
  detail::ext_gcd(-r.q, -r.p, x, y);  // x*(-q) + y*(-p) = 1
  return FareyAut{x, y, r.p, -r.q};
}

namespace detail {

// d(inf, x) by the separation recursion: the triangle (inf, floor x, ceil x)
// separates x from every other integer.
inline int distance_from_infinity(const Slope& x, std::unordered_map<integer, std::unordered_map<integer, int>>& memo) {
  if (x.is_infinity()) return 0;
  if (x.is_integer()) return 1;
  auto& row = memo[x.p];
  if (auto it = row.find(x.q); it != row.end()) return it->second;
  integer fl = floor_div(x.q, x.p);
  // 1/(n - x) for n = floor and n = ceil.
  Slope lo = reduce_slope(x.p, checked(static_cast<__int128>(fl) * x.p - x.q));
  Slope hi = reduce_slope(x.p, checked(static_cast<__int128>(fl + 1) * x.p - x.q));
  int best = 1 + std::min(distance_from_infinity(lo, memo), distance_from_infinity(hi, memo));
  row[x.q] = best;
  return best;
}

}  // namespace detail

inline int farey_distance(const Slope& r, const Slope& s) {
  if (r == s) return 0;
  std::unordered_map<integer, std::unordered_map<integer, int>> memo;
  return detail::distance_from_infinity(move_to_infinity(r)(s), memo);
}

struct ContinuedFraction {
  integer a0 = 0;
  std::vector<integer> terms;

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

inline std::string to_string(const ContinuedFraction& cf) {
  std::string out = std::to_string(cf.a0) + " + [";
  for (std::size_t i = 0; i < cf.terms.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(cf.terms[i]);
  }
  return out + "]";
}

// a0 = floor(r), then the all-positive expansion of the fractional part with
// last term >= 2. An integer k becomes (k - 1) + [1].
inline ContinuedFraction cf_expand(const Slope& r) {
  detail::require(!r.is_infinity(), "cf_expand: infinity has no continued fraction");
  ContinuedFraction cf;
  cf.a0 = detail::floor_div(r.q, r.p);
  integer num = r.q - cf.a0 * r.p, den = r.p;  // fractional part num/den in [0,1)
  if (num == 0) {
    cf.a0 -= 1;
    cf.terms = {1};
    return cf;
  }
  // 1/(num/den) = den/num, expand with Euclid.
  integer x = den, y = num;
  while (y != 0) {
    cf.terms.push_back(x / y);
    integer rem = x % y;
    x = y;
    y = rem;
  }
  return cf;
}

namespace detail {

// [b1, ..., bm] = 1/(b1 + 1/(b2 + ...)) as a fraction num/den.
inline Slope pure_cf_value(const std::vector<integer>& b) {
  // Evaluate from the back: value = 0 initially (num/den = 0/1).
  __int128 num = 0, den = 1;
  for (auto it = b.rbegin(); it != b.rend(); ++it) {
    // new = 1 / (b + num/den) = den / (b*den + num)
    __int128 nd = static_cast<__int128>(*it) * den + num;
    num = den;
    den = nd;
  }
  return reduce_slope(checked(num), checked(den));
}

}  // namespace detail

inline Slope cf_value(const ContinuedFraction& cf) {
  for (integer t : cf.terms) detail::require(t >= 1, "cf_value: terms must be positive");
  Slope frac = detail::pure_cf_value(cf.terms);
  return reduce_slope(detail::checked(static_cast<__int128>(cf.a0) * frac.p + frac.q), frac.p);
}

inline Slope covering_slope(const Slope& r) {
  detail::require(!r.is_infinity() && !(r == kZero), "covering_slope: r must not be 0 or infinity");
  if (r.q < 0) return negate(covering_slope(negate(r)));
  ContinuedFraction cf = cf_expand(r);
  const auto& a = cf.terms;
  std::size_t n = a.size();
  std::vector<integer> pal;
  if (cf.a0 != 0) {
    for (std::size_t i = n; i-- > 0;) pal.push_back(a[i]);
    pal.push_back(2 * cf.a0);
    for (std::size_t i = 0; i < n; ++i) pal.push_back(a[i]);
  } else {
    for (std::size_t i = n; i-- > 1;) pal.push_back(a[i]);
    pal.push_back(2 * a[0]);
    for (std::size_t i = 1; i < n; ++i) pal.push_back(a[i]);
  }
  Slope v = detail::pure_cf_value(pal);
  return (n % 2 == 0) ? negate(v) : v;
}

// q~^2 = 1 mod 2 p~ for a finite slope.
inline bool covering_congruence(const Slope& rt) {
  if (rt.is_infinity()) return false;
  integer m = 2 * rt.p;
  return detail::mod(detail::checked(static_cast<__int128>(rt.q) * rt.q), m) == 1 % m;
}

// Some xi in Aut(D) with xi({r, inf}) = {s, inf}; with orientation_preserving,
// either det xi = 1 and xi fixes inf, or det xi = -1 and xi swaps.
inline std::optional<FareyAut> two_bridge_equivalent(const Slope& r, const Slope& s, bool orientation_preserving) {
  if (r.is_infinity() || s.is_infinity()) {
    if (r == s) return FareyAut{};
    return std::nullopt;
  }
  if (r.p != s.p) return std::nullopt;
  const integer p = r.p;
  // xi(inf) = inf: xi(x) = x + k (det 1) or -x + k (det -1).
  if (detail::mod(s.q - r.q, p) == 0) return FareyAut{1, (s.q - r.q) / p, 0, 1};
  if (!orientation_preserving && detail::mod(s.q + r.q, p) == 0) return FareyAut{-1, (s.q + r.q) / p, 0, 1};
  // xi(inf) = s, xi(r) = inf: xi = [[q_s, beta], [p, -q_r]], det = -q_s q_r - beta p.
  for (integer det : {integer{-1}, integer{1}}) {
    if (orientation_preserving && det == 1) continue;
    __int128 num = -static_cast<__int128>(s.q) * r.q - det;
    if (num % p != 0) continue;
    FareyAut xi{s.q, detail::checked(num / p), p, -r.q};
    detail::ensure(xi.det() == det && xi(r).is_infinity() && xi(kInfinity) == s, "two_bridge_equivalent: bad witness");
    return xi;
  }
  return std::nullopt;
}

inline bool two_bridge_hyperbolic(const Slope& r) { return farey_distance(kInfinity, r) >= 3; }

inline bool rational_p3_classify(const Slope& r, const Slope& s, bool orientation_preserving) {
  Slope inv = reciprocal(r);
  if (s == r || s == negate(inv)) return true;
  if (orientation_preserving) return false;
  return s == negate(r) || s == inv;
}

inline bool rational_p3_trivial(const Slope& r) { return r == kZero || r.is_infinity(); }

inline bool rational_p3_hyperbolic(const Slope& r) {
  return std::min(farey_distance(kZero, r), farey_distance(kInfinity, r)) >= 2;
}

}  // namespace cuspcubes

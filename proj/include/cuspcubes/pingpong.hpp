#pragma once

// Parabolic Moebius maps, isometric-circle butterflies and the ping-pong
// freeness certificate for a pair of parabolics. Exact arithmetic over
// Gaussian rationals; a double-precision variant with a tangency tolerance.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cuspcubes/error.hpp"

namespace cuspcubes {

using Rational = boost::multiprecision::cpp_rational;

template <class T>
struct Field;

template <>
struct Field<Rational> {
  static constexpr bool exact = true;
  static bool zero(const Rational& x) { return x == 0; }
  static bool nonneg(const Rational& x) { return x >= 0; }
  static double to_double(const Rational& x) { return static_cast<double>(x); }
  static std::string str(const Rational& x) {
    std::ostringstream out;
    out << numerator(x);
    if (denominator(x) != 1) out << "/" << denominator(x);
    return out.str();
  }
  // Decimal or p/q.
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      auto q = integer_part(s.substr(slash + 1), s);
      detail::require(q != 0, "zero denominator in " + s);
      return Rational(integer_part(s.substr(0, slash), s), q);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(integer_part(s, s));
    std::string frac = s.substr(dot + 1);
    detail::require(!frac.empty() && frac.find_first_not_of("0123456789") == std::string::npos, "not a rational number: " + s);
    boost::multiprecision::cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::string whole = s.substr(0, dot);
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    Rational w(integer_part(whole, s)), f(integer_part(frac, s), scale);
    return neg ? Rational(w - f) : Rational(w + f);
  }

 private:
  // Signed decimal integer; leading zeros are decimal, not octal.
  static boost::multiprecision::cpp_int integer_part(std::string t, const std::string& whole) {
    bool neg = false;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
      neg = t[0] == '-';
      t = t.substr(1);
    }
    detail::require(!t.empty() && t.find_first_not_of("0123456789") == std::string::npos, "not a rational number: " + whole);
    auto nz = t.find_first_not_of('0');
    boost::multiprecision::cpp_int v(nz == std::string::npos ? std::string("0") : t.substr(nz));
    return neg ? -v : v;
  }
};

template <>
struct Field<double> {
  static constexpr bool exact = false;
  static inline double tolerance = 1e-12;
  static bool zero(double x) { return std::abs(x) <= tolerance; }
  static bool nonneg(double x) { return x >= -tolerance; }
  static double to_double(double x) { return x; }
  static std::string str(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
  }
  static double parse(const std::string& s) { return Field<Rational>::to_double(Field<Rational>::parse(s)); }
};

template <class T>
struct Complex {
  T re{}, im{};

  Complex() = default;
  Complex(T r, T i = T(0)) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r), im(0) {}

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  T norm() const { return re * re + im * im; }
  Complex conj() const { return {re, -im}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    T n = b.norm();
    detail::require(!Field<T>::zero(n), "division by zero");
    Complex p = a * b.conj();
    return {p.re / n, p.im / n};
  }
  bool is_zero() const { return Field<T>::zero(re) && Field<T>::zero(im); }
  friend bool approx_equal(const Complex& a, const Complex& b) { return (a - b).is_zero(); }
};

template <class T>
std::string to_string(const Complex<T>& z) {
  std::string s = Field<T>::str(z.re);
  if (!Field<T>::zero(z.im)) s += (Field<T>::nonneg(z.im) ? "+" : "") + Field<T>::str(z.im) + "i";
  return s;
}

// "a", "bi", "a+bi", "-i", each part decimal or p/q.
template <class T>
Complex<T> parse_complex(std::string s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  detail::require(!t.empty(), "empty complex number");
  if (t.back() != 'i') return {Field<T>::parse(t), T(0)};
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < t.size(); ++i)
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e') split = i;
  std::string re = split == std::string::npos ? "0" : t.substr(0, split);
  std::string im = split == std::string::npos ? t : t.substr(split);
  if (!im.empty() && im[0] == '+') im = im.substr(1);
  if (im.empty()) im = "1";
  if (im == "-") im = "-1";
  return {Field<T>::parse(re), Field<T>::parse(im)};
}

template <class T>
struct ExtPoint {
  bool infinite = false;
  Complex<T> z;

  static ExtPoint infinity() { return {true, {}}; }
  friend bool same_point(const ExtPoint& a, const ExtPoint& b) {
    return a.infinite == b.infinite && (a.infinite || approx_equal(a.z, b.z));
  }
};

template <class T>
std::string to_string(const ExtPoint<T>& p) {
  return p.infinite ? "inf" : to_string(p.z);
}

template <class T>
struct MobiusMap {
  Complex<T> a{1}, b{0}, c{0}, d{1};

  Complex<T> det() const { return a * d - b * c; }
  Complex<T> trace() const { return a + d; }
};

template <class T>
std::string to_string(const MobiusMap<T>& m) {
  return "[[" + to_string(m.a) + "," + to_string(m.b) + "],[" + to_string(m.c) + "," + to_string(m.d) + "]]";
}

// Rescales to determinant 1. Exact maps must have determinant +-1.
template <class T>
MobiusMap<T> normalized(MobiusMap<T> m) {
  Complex<T> det = m.det();
  detail::require(!det.is_zero(), "singular matrix");
  if constexpr (Field<T>::exact) {
    if (approx_equal(det, Complex<T>(1))) return m;
    detail::require(approx_equal(det, Complex<T>(-1)),
                    "exact maps need determinant 1 or -1 (got " + to_string(det) + "); use float mode");
    Complex<T> i(T(0), T(1));
    return {m.a * i, m.b * i, m.c * i, m.d * i};
  } else {
    auto s = std::sqrt(std::complex<double>(det.re, det.im));
    Complex<T> r(s.real(), s.imag());
    return {m.a / r, m.b / r, m.c / r, m.d / r};
  }
}

template <class T>
MobiusMap<T> compose(const MobiusMap<T>& m1, const MobiusMap<T>& m2) {
  return normalized(MobiusMap<T>{m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d, m1.c * m2.a + m1.d * m2.c,
                                 m1.c * m2.b + m1.d * m2.d});
}

template <class T>
MobiusMap<T> inverse(const MobiusMap<T>& m) {
  return {m.d, -m.b, -m.c, m.a};
}

template <class T>
bool equal_up_to_sign(const MobiusMap<T>& x, const MobiusMap<T>& y) {
  auto same = [](const MobiusMap<T>& p, const MobiusMap<T>& q) {
    return approx_equal(p.a, q.a) && approx_equal(p.b, q.b) && approx_equal(p.c, q.c) && approx_equal(p.d, q.d);
  };
  return same(x, y) || same(x, MobiusMap<T>{-y.a, -y.b, -y.c, -y.d});
}

template <class T>
bool is_identity(const MobiusMap<T>& m) {
  return equal_up_to_sign(m, MobiusMap<T>{});
}

template <class T>
ExtPoint<T> apply_map(const MobiusMap<T>& m, const ExtPoint<T>& p) {
  if (p.infinite) {
    if (m.c.is_zero()) return ExtPoint<T>::infinity();
    return {false, m.a / m.c};
  }
  Complex<T> den = m.c * p.z + m.d;
  if (den.is_zero()) return ExtPoint<T>::infinity();
  return {false, (m.a * p.z + m.b) / den};
}

template <class T>
bool is_parabolic(const MobiusMap<T>& m) {
  Complex<T> t = m.trace();
  return approx_equal(t * t, Complex<T>(4)) && !is_identity(m);
}

template <class T>
ExtPoint<T> fixed_point(const MobiusMap<T>& m) {
  detail::require(!is_identity(m), "the identity has no unique fixed point");
  detail::require(is_parabolic(m), "map is not parabolic: trace " + to_string(m.trace()));
  if (m.c.is_zero()) return ExtPoint<T>::infinity();
  return {false, (m.a - m.d) / (Complex<T>(2) * m.c)};
}

// Closed round disk, stored by squared radius so exact data stays exact.
template <class T>
struct RoundDisk {
  Complex<T> center;
  T radius_squared{};

  double radius() const { return std::sqrt(Field<T>::to_double(radius_squared)); }
};

// Open interiors are disjoint iff |c1 - c2| >= r1 + r2, tested by squaring
// twice.
template <class T>
bool interiors_disjoint(const RoundDisk<T>& x, const RoundDisk<T>& y) {
  T gap = (x.center - y.center).norm() - x.radius_squared - y.radius_squared;
  if (!Field<T>::nonneg(gap)) return false;
  return Field<T>::nonneg(gap * gap - T(4) * x.radius_squared * y.radius_squared);
}

template <class T>
bool disjoint_interiors(const std::vector<RoundDisk<T>>& disks) {
  detail::require(disks.size() >= 2, "disjoint_interiors needs at least two disks");
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t j = i + 1; j < disks.size(); ++j)
      if (!interiors_disjoint(disks[i], disks[j])) return false;
  return true;
}

template <class T>
struct Butterfly {
  MobiusMap<T> map;
  RoundDisk<T> neg, pos;
};

// neg is the isometric disk |cz + d| <= 1, pos = |cz - a| <= 1; the map
// sends the outside of neg onto pos.
template <class T>
Butterfly<T> isometric_butterfly(const MobiusMap<T>& m0) {
  MobiusMap<T> m = normalized(m0);
  detail::require(is_parabolic(m), "isometric_butterfly needs a parabolic map");
  detail::require(!m.c.is_zero(), "map fixes infinity; conjugate first (normalize_pair)");
  T r2 = T(1) / m.c.norm();
  Butterfly<T> bf{m, {-(m.d / m.c), r2}, {m.a / m.c, r2}};
  // Three points of the boundary of neg land on the boundary of pos; the
  // exterior point infinity lands on the centre of pos.
  for (const Complex<T>& u : {Complex<T>(1), Complex<T>(T(0), T(1)), Complex<T>(-1)}) {
    Complex<T> z = (u - m.d) / m.c;
    auto w = apply_map(m, ExtPoint<T>{false, z});
    detail::ensure(!w.infinite && Field<T>::zero((m.c * w.z - m.a).norm() - T(1)), "butterfly boundary check failed");
  }
  auto inf = apply_map(m, ExtPoint<T>::infinity());
  detail::ensure(!inf.infinite && approx_equal(inf.z, bf.pos.center), "butterfly exterior check failed");
  auto fix = fixed_point(m);
  detail::ensure(Field<T>::zero((fix.z - bf.neg.center).norm() - r2) && Field<T>::zero((fix.z - bf.pos.center).norm() - r2),
                 "butterfly disks are not tangent at the fixed point");
  return bf;
}

template <class T>
struct NormalizedPair {
  MobiusMap<T> m1, m2, conjugator;  // m_i' = C m_i C^-1
};

template <class T>
NormalizedPair<T> normalize_pair(const MobiusMap<T>& a, const MobiusMap<T>& b) {
  auto m1 = normalized(a), m2 = normalized(b);
  auto f1 = fixed_point(m1), f2 = fixed_point(m2);
  detail::require(!same_point(f1, f2), "normalize_pair needs distinct fixed points");
  if (!f1.infinite && !f2.infinite) return {m1, m2, MobiusMap<T>{}};
  // C(z) = 1 / (w - z) with w one past the finite fixed point: C(inf) = 0 and
  // C(p) = 1.
  Complex<T> p = f1.infinite ? f2.z : f1.z;
  MobiusMap<T> C{Complex<T>(0), Complex<T>(1), Complex<T>(-1), p + Complex<T>(1)};
  auto conj = [&](const MobiusMap<T>& m) { return compose(compose(C, m), inverse(C)); };
  return {conj(m1), conj(m2), C};
}

enum class PingPongKind { FreeCertified, Commuting, Inconclusive };

inline const char* to_string(PingPongKind k) {
  switch (k) {
    case PingPongKind::FreeCertified: return "FreeCertified";
    case PingPongKind::Commuting: return "Commuting";
    case PingPongKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

template <class T>
struct PingPongCertificate {
  PingPongKind kind = PingPongKind::Inconclusive;
  bool exact = Field<T>::exact;
  std::vector<Butterfly<T>> butterflies;
  MobiusMap<T> conjugator;
  std::string remark;
  std::string diagnostic;
};

template <class T>
PingPongCertificate<T> pingpong_certificate(const MobiusMap<T>& a, const MobiusMap<T>& b) {
  auto m1 = normalized(a), m2 = normalized(b);
  detail::require(is_parabolic(m1), "first map is not parabolic");
  detail::require(is_parabolic(m2), "second map is not parabolic");
  PingPongCertificate<T> cert;
  if (same_point(fixed_point(m1), fixed_point(m2))) {
    cert.kind = PingPongKind::Commuting;
    cert.remark = "equal fixed points: the parabolics commute and generate an abelian group";
    return cert;
  }
  auto np = normalize_pair(m1, m2);
  cert.conjugator = np.conjugator;
  auto b1 = isometric_butterfly(np.m1), b2 = isometric_butterfly(np.m2);
  cert.butterflies = {b1, b2};
  std::array<RoundDisk<T>, 4> disks{b1.neg, b1.pos, b2.neg, b2.pos};
  const char* names[4] = {"neg1", "pos1", "neg2", "pos2"};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!interiors_disjoint(disks[i], disks[j])) {
        cert.kind = PingPongKind::Inconclusive;
        cert.diagnostic = std::string("isometric disks ") + names[i] + " and " + names[j] +
                          " overlap; round disks give no certificate (this is not a non-freeness claim)";
        return cert;
      }
  cert.kind = PingPongKind::FreeCertified;
  cert.remark = "four closed round disks with disjoint interiors cannot cover the sphere, so their complement O is "
                "non-empty; the group is free of rank 2 and geometrically finite by the ping-pong criterion";
  if constexpr (!Field<T>::exact) cert.remark += " (numerically certified, tolerance " + Field<T>::str(Field<T>::tolerance) + ")";
  return cert;
}

struct WordCheck {
  bool ok = true;
  long long checked = 0;
  std::string identity_word;  // first reduced word found equal to +-identity
};

// Every nonempty reduced word of length <= max_length in m1^+-1, m2^+-1 is
// checked against +-identity; the four first letters run in parallel. A
// shortest identity word is reported.
template <class T>
WordCheck free_word_sanity(const MobiusMap<T>& a, const MobiusMap<T>& b, int max_length) {
  detail::require(max_length >= 0, "max_length must be non-negative");
  WordCheck total;
  if (max_length == 0) return total;
  const std::array<MobiusMap<T>, 4> gen{normalized(a), inverse(normalized(a)), normalized(b), inverse(normalized(b))};
  const char* names[4] = {"a", "A", "b", "B"};
  auto run = [&](int first) {
    WordCheck w;
    std::vector<int> word{first};
    std::vector<MobiusMap<T>> prefix{gen[first]};
    // Depth-first over reduced words starting with `first`.
    auto rec = [&](auto&& self) -> void {
      ++w.checked;
      if (is_identity(prefix.back()) && (w.ok || word.size() < w.identity_word.size())) {
        w.ok = false;
        w.identity_word.clear();
        for (int g : word) w.identity_word += names[g];
      }
      if (static_cast<int>(word.size()) == max_length) return;
      for (int g = 0; g < 4; ++g) {
        if ((g ^ 1) == word.back()) continue;
        word.push_back(g);
        prefix.push_back(compose(prefix.back(), gen[g]));
        self(self);
        prefix.pop_back();
        word.pop_back();
      }
    };
    rec(rec);
    return w;
  };
  std::vector<std::future<WordCheck>> parts;
  for (int g = 0; g < 4; ++g) parts.push_back(std::async(std::launch::async, run, g));
  for (auto& f : parts) {
    auto w = f.get();
    total.checked += w.checked;
    if (!w.ok && (total.ok || w.identity_word.size() < total.identity_word.size())) {
      total.ok = false;
      total.identity_word = w.identity_word;
    }
  }
  return total;
}

}  // namespace cuspcubes

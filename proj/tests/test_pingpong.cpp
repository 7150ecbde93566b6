#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "cuspcubes/pingpong.hpp"

using namespace cuspcubes;

namespace {

using Q = Rational;
using M = MobiusMap<Q>;
using C = Complex<Q>;

M mat(int a, int b, int c, int d) { return M{C(a), C(b), C(c), C(d)}; }
Q q(int p, int r = 1) { return Q(p) / r; }
ExtPoint<Q> pt(Q x) { return {false, C(x)}; }

const M kM1 = mat(1, 0, 4, 1);
const M kM2 = mat(9, -16, 4, -7);

// Integer 2x2 products, independent of the Moebius code.
using IMat = std::array<long long, 4>;
IMat mul(const IMat& x, const IMat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}
bool plus_minus_identity(const IMat& x) {
  return x[1] == 0 && x[2] == 0 && ((x[0] == 1 && x[3] == 1) || (x[0] == -1 && x[3] == -1));
}
long long count_identity_words(const std::array<IMat, 4>& g, int max_len, long long& words) {
  long long found = 0;
  std::vector<int> w;
  std::vector<IMat> pre;
  auto rec = [&](auto&& self) -> void {
    for (int x = 0; x < 4; ++x) {
      if (!w.empty() && (x ^ 1) == w.back()) continue;
      IMat next = pre.empty() ? g[x] : mul(pre.back(), g[x]);
      ++words;
      found += plus_minus_identity(next);
      if (static_cast<int>(w.size()) + 1 < max_len) {
        w.push_back(x);
        pre.push_back(next);
        self(self);
        pre.pop_back();
        w.pop_back();
      }
    }
  };
  rec(rec);
  return found;
}

}  // namespace

TEST(Mobius, ComposeInverseApply) {
  EXPECT_TRUE(is_identity(compose(kM2, inverse(kM2))));
  EXPECT_TRUE(apply_map(mat(1, 1, 0, 1), ExtPoint<Q>::infinity()).infinite);
  auto z = apply_map(mat(1, 0, 2, 1), pt(0));
  EXPECT_FALSE(z.infinite);
  EXPECT_TRUE(z.z.is_zero());
  EXPECT_TRUE(apply_map(mat(1, 0, 1, 1), pt(-1)).infinite);
  auto w = apply_map(mat(1, 0, 1, 1), ExtPoint<Q>::infinity());
  EXPECT_TRUE(approx_equal(w.z, C(1)));
  EXPECT_TRUE(equal_up_to_sign(mat(1, 2, 3, 7), mat(-1, -2, -3, -7)));
  EXPECT_THROW(normalized(mat(2, 0, 0, 1)), invalid_input);
  // Determinant -1 is rescaled by i.
  auto n = normalized(mat(0, 1, 1, 0));
  EXPECT_TRUE(approx_equal(n.det(), C(1)));
}

TEST(Mobius, ParabolicAndFixedPoint) {
  EXPECT_TRUE(is_parabolic(mat(1, 1, 0, 1)));
  EXPECT_TRUE(fixed_point(mat(1, 1, 0, 1)).infinite);
  M hyper{C(q(2)), C(0), C(0), C(q(1, 2))};
  EXPECT_FALSE(is_parabolic(hyper));
  EXPECT_THROW(fixed_point(hyper), invalid_input);
  EXPECT_TRUE(is_parabolic(kM1));
  EXPECT_TRUE(fixed_point(kM1).z.is_zero());
  EXPECT_TRUE(approx_equal(fixed_point(kM2).z, C(2)));
  EXPECT_FALSE(is_parabolic(M{}));
  EXPECT_THROW(fixed_point(M{}), invalid_input);
  EXPECT_TRUE(is_parabolic(mat(-1, 1, 0, -1)));
}

TEST(Mobius, ParseComplex) {
  auto z = parse_complex<Q>("1/2+3/4i");
  EXPECT_EQ(z.re, q(1, 2));
  EXPECT_EQ(z.im, q(3, 4));
  EXPECT_EQ(parse_complex<Q>("-i").im, q(-1));
  EXPECT_EQ(parse_complex<Q>("0.25").re, q(1, 4));
  EXPECT_EQ(parse_complex<Q>("-7").re, q(-7));
  EXPECT_EQ(to_string(C(q(-9, 4), q(1, 2))), "-9/4+1/2i");
  EXPECT_THROW(parse_complex<Q>("x"), invalid_input);
  EXPECT_THROW(parse_complex<Q>("1/0"), invalid_input);
}

TEST(Butterfly, IsometricDisks) {
  auto b1 = isometric_butterfly(kM1);
  EXPECT_TRUE(approx_equal(b1.neg.center, C(q(-1, 4))));
  EXPECT_TRUE(approx_equal(b1.pos.center, C(q(1, 4))));
  EXPECT_EQ(b1.neg.radius_squared, q(1, 16));
  EXPECT_DOUBLE_EQ(b1.neg.radius(), 0.25);
  auto b2 = isometric_butterfly(kM2);
  EXPECT_TRUE(approx_equal(b2.neg.center, C(q(7, 4))));
  EXPECT_TRUE(approx_equal(b2.pos.center, C(q(9, 4))));
  EXPECT_EQ(b2.pos.radius_squared, q(1, 16));
  EXPECT_THROW(isometric_butterfly(mat(1, 1, 0, 1)), invalid_input);
  EXPECT_THROW(isometric_butterfly(mat(2, 1, 1, 1)), invalid_input);
}

TEST(Butterfly, MapsOutsideOfNegOntoPosDense) {
  // Many boundary points in floating point, beyond the three exact ones.
  for (const M& m : {kM1, kM2, mat(3, -4, 1, -1)}) {
    auto bf = isometric_butterfly(m);
    std::complex<double> a(static_cast<double>(m.a.re)), b(static_cast<double>(m.b.re)), c(static_cast<double>(m.c.re)),
        d(static_cast<double>(m.d.re));
    std::complex<double> cn(static_cast<double>(bf.neg.center.re), 0), cp(static_cast<double>(bf.pos.center.re), 0);
    double r = bf.neg.radius();
    for (int k = 0; k < 360; ++k) {
      double t = k * std::acos(-1.0) / 180;
      std::complex<double> z = cn + r * 1.5 * std::polar(1.0, t);  // outside neg
      std::complex<double> w = (a * z + b) / (c * z + d);
      EXPECT_LT(std::abs(w - cp), r + 1e-9);
      z = cn + r * std::polar(1.0, t);
      if (std::abs(c * z + d) < 1e-9) continue;
      w = (a * z + b) / (c * z + d);
      EXPECT_NEAR(std::abs(w - cp), r, 1e-9);
    }
  }
}

TEST(Disks, DisjointInteriors) {
  std::vector<RoundDisk<Q>> four{{C(q(-1, 4)), q(1, 16)}, {C(q(1, 4)), q(1, 16)}, {C(q(7, 4)), q(1, 16)}, {C(q(9, 4)), q(1, 16)}};
  EXPECT_TRUE(disjoint_interiors(four));
  EXPECT_FALSE(disjoint_interiors(std::vector<RoundDisk<Q>>{{C(0), q(1)}, {C(1), q(1)}}));
  EXPECT_TRUE(disjoint_interiors(std::vector<RoundDisk<Q>>{{C(0), q(1)}, {C(2), q(1)}}));
  // 3-4-5: distance 5, radii 2 and 3 are tangent; radii 2 and 3.01 overlap.
  EXPECT_TRUE(disjoint_interiors(std::vector<RoundDisk<Q>>{{C(0), q(4)}, {C(q(3), q(4)), q(9)}}));
  EXPECT_FALSE(disjoint_interiors(std::vector<RoundDisk<Q>>{{C(0), q(4)}, {C(q(3), q(4)), q(301 * 301, 10000)}}));
  EXPECT_THROW(disjoint_interiors(std::vector<RoundDisk<Q>>{{C(0), q(1)}}), invalid_input);
}

TEST(PingPong, CertifiedPair) {
  auto cert = pingpong_certificate(kM1, kM2);
  EXPECT_EQ(cert.kind, PingPongKind::FreeCertified);
  ASSERT_EQ(cert.butterflies.size(), 2u);
  EXPECT_TRUE(is_identity(cert.conjugator));
  EXPECT_TRUE(cert.exact);
  EXPECT_NE(cert.remark.find("non-empty"), std::string::npos);
  auto words = free_word_sanity(kM1, kM2, 10);
  EXPECT_TRUE(words.ok);
  EXPECT_EQ(words.checked, 4LL * (59049 - 1) / 2);  // 4 * (3^10 - 1) / 2
  long long n = 0;
  EXPECT_EQ(count_identity_words({IMat{1, 0, 4, 1}, IMat{1, 0, -4, 1}, IMat{9, -16, 4, -7}, IMat{-7, 16, -4, 9}}, 10, n), 0);
  EXPECT_EQ(n, words.checked);
}

TEST(PingPong, CommutingAndInconclusive) {
  EXPECT_EQ(pingpong_certificate(kM1, kM1).kind, PingPongKind::Commuting);
  EXPECT_EQ(pingpong_certificate(kM1, mat(1, 0, -3, 1)).kind, PingPongKind::Commuting);
  auto w = free_word_sanity(kM1, kM1, 4);
  EXPECT_FALSE(w.ok);
  EXPECT_EQ(w.identity_word.size(), 2u);
  auto cert = pingpong_certificate(mat(1, 0, 1, 1), mat(2, -1, 1, 0));
  EXPECT_EQ(cert.kind, PingPongKind::Inconclusive);
  EXPECT_NE(cert.diagnostic.find("overlap"), std::string::npos);
  EXPECT_TRUE(free_word_sanity(kM1, kM2, 0).ok);
  EXPECT_THROW(pingpong_certificate(mat(2, 1, 1, 1), kM1), invalid_input);
}

TEST(PingPong, NormalizePairMovesInfinity) {
  auto np = normalize_pair(mat(1, 1, 0, 1), kM1);
  EXPECT_FALSE(fixed_point(np.m1).infinite);
  EXPECT_FALSE(fixed_point(np.m2).infinite);
  EXPECT_TRUE(is_parabolic(np.m1));
  // m_i' = C m_i C^-1.
  EXPECT_TRUE(equal_up_to_sign(compose(np.conjugator, kM1), compose(np.m2, np.conjugator)));
  EXPECT_THROW(normalize_pair(kM1, kM1), invalid_input);
  auto cert = pingpong_certificate(mat(1, 1, 0, 1), kM1);
  EXPECT_NE(cert.kind, PingPongKind::Commuting);
  EXPECT_FALSE(is_identity(cert.conjugator));
}

TEST(PingPong, InvariantUnderSwapAndInverse) {
  std::vector<std::pair<M, M>> pairs{{kM1, kM2}, {mat(1, 0, 1, 1), mat(2, -1, 1, 0)}, {mat(1, 0, 4, 1), mat(1, 0, 4, 1)},
                                     {mat(1, 0, 2, 1), mat(1, -4, 0, 1)}, {mat(1, 0, 6, 1), mat(13, -72, 2, -11)}};
  for (const auto& [a, b] : pairs) {
    auto k = pingpong_certificate(a, b).kind;
    EXPECT_EQ(pingpong_certificate(b, a).kind, k);
    EXPECT_EQ(pingpong_certificate(inverse(a), b).kind, k);
    EXPECT_EQ(pingpong_certificate(a, inverse(b)).kind, k);
  }
  // Inversion swaps the two disks.
  auto b = isometric_butterfly(kM1), bi = isometric_butterfly(inverse(kM1));
  EXPECT_TRUE(approx_equal(b.neg.center, bi.pos.center));
  EXPECT_TRUE(approx_equal(b.pos.center, bi.neg.center));
}

TEST(PingPong, FloatPathAgrees) {
  using D = double;
  auto m = [](double a, double b, double c, double d) {
    return MobiusMap<D>{Complex<D>(a), Complex<D>(b), Complex<D>(c), Complex<D>(d)};
  };
  auto cert = pingpong_certificate(m(1, 0, 4, 1), m(9, -16, 4, -7));
  EXPECT_EQ(cert.kind, PingPongKind::FreeCertified);
  EXPECT_FALSE(cert.exact);
  EXPECT_NE(cert.remark.find("numerically certified"), std::string::npos);
  EXPECT_EQ(pingpong_certificate(m(1, 0, 1, 1), m(2, -1, 1, 0)).kind, PingPongKind::Inconclusive);
  // Determinant 4 is rescaled in float mode.
  auto n = normalized(m(2, 0, 8, 2));
  EXPECT_NEAR(n.det().re, 1.0, 1e-12);
  EXPECT_TRUE(is_parabolic(n));
  EXPECT_TRUE(free_word_sanity(m(1, 0, 4, 1), m(9, -16, 4, -7), 6).ok);
}

TEST(Mobius, ParseRejectsNonDecimal) {
  EXPECT_EQ(parse_complex<Q>("010").re, q(10));
  EXPECT_EQ(parse_complex<Q>("-0.5").re, q(-1, 2));
  EXPECT_EQ(parse_complex<Q>(".5").re, q(1, 2));
  EXPECT_THROW(parse_complex<Q>("0x10"), invalid_input);
  EXPECT_THROW(parse_complex<Q>("1.2.3"), invalid_input);
}

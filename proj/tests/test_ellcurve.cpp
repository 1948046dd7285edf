#include <gtest/gtest.h>

#include "support.hpp"
#include "vis3/ellcurve.hpp"

using namespace vis3;
using vis3::test::fermat;
using vis3::test::fixture_cubic;

namespace {

TernaryCubic member_681() {
  return fixture_cubic("P0-681").scaled(55033) + fixture_cubic("Q0-681").scaled(-235);
}

using Affine = std::pair<Rational, Rational>;

// textbook affine addition on a long Weierstrass model, P != -Q
Affine affine_add(const RationalModel& W, const Affine& P, const Affine& Q) {
  Rational lam, nu;
  if (P == Q) {
    lam = (3 * P.first * P.first + 2 * W.a2 * P.first + W.a4 - W.a1 * P.second) / (2 * P.second + W.a1 * P.first + W.a3);
  } else {
    lam = (Q.second - P.second) / (Q.first - P.first);
  }
  nu = P.second - lam * P.first;
  Rational x3 = lam * lam + W.a1 * lam - W.a2 - P.first - Q.first;
  Rational y3 = -(lam + W.a1) * x3 - nu - W.a3;
  return {x3, y3};
}

Vec3<Rational> proj(const Affine& a) { return detail::tidy(Vec3<Rational>{a.first, a.second, 1}); }

}  // namespace

TEST(GroupLaw, WeierstrassDoubleAndTriple) {
  RationalModel W(0, -1, 1, 0, 2);
  auto C = weierstrass_pointed(W);
  Affine P{1, 1};
  Affine P2 = affine_add(W, P, P);
  EXPECT_EQ(P2, Affine(Rational(-8, 9), Rational(-37, 27)));
  Affine P3 = affine_add(W, P2, P);
  EXPECT_EQ(C.mul(2, proj(P)), proj(P2));
  EXPECT_EQ(C.mul(3, proj(P)), proj(P3));
  EXPECT_EQ(C.mul(5, proj(P)), proj(affine_add(W, affine_add(W, P3, P), P)));
  // P + (-P) = O
  Vec3<Rational> O{0, 1, 0};
  EXPECT_EQ(C.add(proj(P), C.negate(proj(P))), O);
  EXPECT_EQ(C.negate(proj(P)), proj(Affine(1, -2)));
  EXPECT_EQ(C.mul(0, proj(P)), O);
  EXPECT_EQ(C.mul(-2, proj(P)), C.negate(proj(P2)));
}

TEST(GroupLaw, ComplexMatchesRational) {
  RationalModel W(0, -1, 1, 0, 2);
  auto C = weierstrass_pointed(W);
  auto Cc = to_complex(C, 256);
  Vec3<Rational> P{1, 1, 1};
  auto exact = C.mul(3, P);
  auto approx = Cc.mul(3, to_complex(P, 256));
  EXPECT_LT(projective_distance(approx, to_complex(exact, 256)), BigFloat::exp2(-200, 256));
}

TEST(GroupLaw, AssociativeOnGeneralCubic) {
  auto G = member_681();
  Vec3<Rational> O{10, 8, 7};
  ASSERT_EQ(G(O), 0);
  PointedCubic<Rational> C{G, O};
  auto P = C.mul(2, C.third(O, O));  // any point will do
  auto Q = C.third(O, P);
  auto lhs = C.add(C.add(P, Q), O);
  auto rhs = C.add(P, C.add(Q, O));
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(C.add(P, C.add(Q, P)), C.add(C.add(P, Q), P));
}

TEST(Nagell, FlexOriginIsLinear) {
  auto R = nagell(fermat(), {1, -1, 0});
  EXPECT_TRUE(R.linear);
  EXPECT_EQ(R.model.j(), 0);
  auto back = R.inverse(Vec3<Rational>{0, 1, 0});
  EXPECT_EQ(back, detail::tidy(Vec3<Rational>{1, -1, 0}));
}

TEST(Nagell, Curve681ReducesToTarget) {
  auto G = member_681();
  Vec3<Rational> O{10, 8, 7};
  auto R = nagell(G, O);
  EXPECT_FALSE(R.linear);
  EXPECT_EQ(R.model.j(), Rational(-4096, 2043));
  RationalModel E2(0, -1, 1, 0, 2);
  auto iso = isomorphic_over_Q(R.model, E2);
  ASSERT_TRUE(iso.has_value());
  EXPECT_EQ(transform_model(R.model, *iso), E2);
  // the maps respect the group law
  PointedCubic<Rational> C{G, O};
  auto Wc = weierstrass_pointed(R.model);
  EXPECT_EQ(R.forward(O), Vec3<Rational>({0, 1, 0}));
  auto P = C.third(O, O);
  auto Q = C.mul(2, P);
  for (const auto& pt : {P, Q, C.add(P, Q)}) {
    auto w = R.forward(pt);
    EXPECT_EQ(R.model.cubic()(w), 0);
    EXPECT_EQ(R.inverse(w), pt);
  }
  EXPECT_EQ(R.forward(C.add(P, Q)), Wc.add(R.forward(P), R.forward(Q)));
  EXPECT_EQ(R.forward(C.mul(3, Q)), Wc.mul(3, R.forward(Q)));
}

TEST(Isomorphism, MatrixMatchesCoefficients) {
  RationalModel W(1, 1, 0, -1154, -15345);
  WeierstrassIso c{2, Rational(1, 3), -1, 5};
  RationalModel V = transform_model(W, c);
  auto back = isomorphic_over_Q(W, V);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(transform_model(W, *back), V);
  auto prop = proportionality(W.cubic().act(iso_matrix(c)), V.cubic());
  EXPECT_TRUE(prop.has_value());
}

TEST(Isomorphism, TwistIsNotIsomorphic) {
  RationalModel W(0, 0, 0, -1, 0);   // y^2 = x^3 - x
  RationalModel T(0, 0, 0, -4, 0);   // quadratic twist by 2
  EXPECT_EQ(W.j(), T.j());
  EXPECT_FALSE(isomorphic_over_Q(W, T).has_value());
  // j = 0 and j = 1728 special cases
  EXPECT_TRUE(isomorphic_over_Q(RationalModel(0, 0, 0, 0, 1), RationalModel(0, 0, 0, 0, 64)).has_value());
  EXPECT_FALSE(isomorphic_over_Q(RationalModel(0, 0, 0, 0, 1), RationalModel(0, 0, 0, 0, 2)).has_value());
  EXPECT_TRUE(isomorphic_over_Q(RationalModel(0, 0, 0, -1, 0), RationalModel(0, 0, 0, -16, 0)).has_value());
}

TEST(NonIsogeny, Curves681bAnd681c) {
  RationalModel E1(1, 1, 0, -1154, -15345), E2(0, -1, 1, 0, 2);
  EXPECT_FALSE(isomorphic_over_Q(E1, E2).has_value());
  auto cert = non_isogeny_certificate(E1, E2, 100);
  ASSERT_TRUE(cert.has_value());
  EXPECT_NE(cert->count1, cert->count2);
  EXPECT_TRUE(good_prime(E1, cert->prime));
  EXPECT_TRUE(good_prime(E2, cert->prime));
  EXPECT_FALSE(non_isogeny_certificate(E2, E2, 100).has_value());
}

TEST(PointCount, SmallPrime) {
  // y^2 + y = x^3 - x^2 + 2 mod 5, counted by hand
  RationalModel W(0, -1, 1, 0, 2);
  long n = 1;
  for (long x = 0; x < 5; ++x)
    for (long y = 0; y < 5; ++y)
      if (((y * y + y) - (x * x * x - x * x + 2)) % 5 == 0) ++n;
  EXPECT_EQ(count_points(W, 5), n);
  EXPECT_FALSE(good_prime(W, 3));  // 3 | 2043
}

TEST(PointSearch, Member681) {
  auto pts = point_search(member_681(), 10);
  bool found = false;
  for (const auto& p : pts) {
    EXPECT_EQ(member_681()(p), 0);
    found = found || p == Vec3<Rational>({10, 8, 7});
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }));
}

TEST(PointSearch, FermatAndPointless) {
  auto pts = point_search(fermat(), 5);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[0], Vec3<Rational>({0, 1, -1}));
  EXPECT_EQ(pts[1], Vec3<Rational>({1, -1, 0}));
  EXPECT_EQ(pts[2], Vec3<Rational>({1, 0, -1}));
  EXPECT_TRUE(point_search(fixture_cubic("C1-681"), 100).empty());
}

TEST(Nagell, WeierstrassInputIsIdentity) {
  RationalModel W(0, -1, 1, 0, 2);
  auto R = nagell(W.cubic().scaled(-3), {0, 1, 0});
  EXPECT_TRUE(R.linear);
  EXPECT_EQ(R.model, W);
  EXPECT_EQ(R.transform, Mat3<Rational>::identity());
}

TEST(Nagell, TransportOfTripling) {
  auto G = member_681();
  Vec3<Rational> O{10, 8, 7};
  auto R = nagell(G, O);
  PointedCubic<Rational> C{G, O};
  auto Wc = weierstrass_pointed(R.model);
  Vec3<Rational> P = C.third(O, O);
  Vec3<Rational> Q = P;
  for (int i = 0; i < 10; ++i) {
    Q = C.add(Q, P);
    EXPECT_EQ(R.forward(C.mul(3, Q)), Wc.mul(3, R.forward(Q)));
    EXPECT_EQ(R.inverse(R.forward(Q)), Q);
  }
  // numeric side on a complex point off the rational ones
  const long prec = 256;
  ComplexCubic Gc = to_complex(G, prec);
  BigComplex x0(BigFloat(Rational(3, 10), prec), BigFloat(Rational(7, 10), prec));
  Vec3<BigComplex> p;
  {
    // solve G(x0, y, 1) = 0 for y
    std::vector<BigComplex> c(4, BigComplex(0L, prec));
    for (std::size_t k = 0; k < 10; ++k) {
      Exponent e = TernaryCubic::exponent(3, k);
      BigComplex m = Gc[k];
      for (int i = 0; i < e.x; ++i) m *= x0;
      c[static_cast<std::size_t>(e.y)] += m;
    }
    auto roots = complex_roots(UniPoly<BigComplex>(c), prec);
    p = {x0, roots.at(0), BigComplex(1L, prec)};
  }
  auto Cc = to_complex(C, prec);
  auto Wcc = to_complex(Wc, prec);
  auto lhs = R.forward(Cc.mul(3, p));
  auto rhs = Wcc.mul(3, R.forward(p));
  EXPECT_LT(projective_distance(lhs, rhs), BigFloat::exp2(-prec / 2, prec));
  EXPECT_LT(projective_distance(R.inverse(R.forward(p)), normalize_point(p)), BigFloat::exp2(-prec / 2, prec));
}

TEST(GroupLaw, AxiomsOnWeierstrassPoints) {
  RationalModel W(0, -1, 1, 0, 2);
  auto C = weierstrass_pointed(W);
  Vec3<Rational> P{1, 1, 1}, O{0, 1, 0};
  auto Q = C.mul(2, P), S = C.mul(-3, P);
  EXPECT_EQ(C.add(Q, S), C.add(S, Q));
  EXPECT_EQ(C.add(Q, O), Q);
  EXPECT_EQ(C.mul(3, O), O);
  EXPECT_EQ(C.negate(Q), detail::tidy(W.involution() * Q));
}

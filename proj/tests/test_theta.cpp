#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support.hpp"
#include "vis3/theta.hpp"

using namespace vis3;
using vis3::test::fermat;
using vis3::test::fixture_cubic;

namespace {

const long kPrec = 512;

Mat3<BigComplex> omega_diag() {
  return Mat3<BigComplex>::diag(BigComplex(1L, kPrec), BigComplex::root_of_unity(1, 3, kPrec),
                                BigComplex::root_of_unity(2, 3, kPrec));
}

Mat3<BigComplex> cyclic_shift() {
  // (x:y:z) -> (y:z:x)
  Mat3<BigComplex> m = Mat3<BigComplex>::zero();
  m(0, 1) = BigComplex(1L, kPrec);
  m(1, 2) = BigComplex(1L, kPrec);
  m(2, 0) = BigComplex(1L, kPrec);
  return m;
}

TernaryCubic random_smooth_cubic(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-9, 9);
  for (;;) {
    std::vector<Rational> c;
    for (int i = 0; i < 10; ++i) c.emplace_back(d(rng));
    TernaryCubic F(3, c);
    if (!F.is_zero() && !is_singular(F).singular) return F;
  }
}

}  // namespace

TEST(Stabilizer, FermatContainsClassicalGenerators) {
  ThetaStabilizer S = stabilizer(flex_points(fermat()));
  auto g = find_element(S, omega_diag());
  auto h = find_element(S, cyclic_shift());
  ASSERT_TRUE(g);
  ASSERT_TRUE(h);
  EXPECT_NE(*g, 0);
  EXPECT_NE(*h, 0);
  // together they generate all 9 elements
  std::set<int> span;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      int e = 0;
      for (int k = 0; k < a; ++k) e = S.cayley[static_cast<std::size_t>(e)][static_cast<std::size_t>(*g)];
      for (int k = 0; k < b; ++k) e = S.cayley[static_cast<std::size_t>(e)][static_cast<std::size_t>(*h)];
      span.insert(e);
    }
  EXPECT_EQ(span.size(), 9u);
}

TEST(Stabilizer, GroupStructure) {
  std::mt19937_64 rng(61);
  for (TernaryCubic F : {fixture_cubic("C1-681"), random_smooth_cubic(rng)}) {
    ThetaStabilizer S = stabilizer(flex_points(F));
    BigFloat tol = threshold_for(kPrec);
    EXPECT_TRUE(projectively_equal(S.elements[0], ProjTransform::normalized(Mat3<BigComplex>::identity()), tol));
    for (int g = 0; g < 9; ++g) {
      for (int h = 0; h < 9; ++h)
        EXPECT_EQ(S.cayley[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)],
                  S.cayley[static_cast<std::size_t>(h)][static_cast<std::size_t>(g)]);
      const auto& A = S.elements[static_cast<std::size_t>(g)].lift;
      EXPECT_TRUE(detail::matrix_ratio(A * A * A, Mat3<BigComplex>::identity(), tol).has_value());
      if (g == 0) continue;
      EXPECT_FALSE(detail::matrix_ratio(A, Mat3<BigComplex>::identity(), tol).has_value());
    }
  }
}

TEST(Stabilizer, ActsWithoutFixedPoints) {
  FlexScheme phi = labeled(flex_points(fixture_cubic("C1-681")));
  ThetaStabilizer S = stabilizer(phi);
  for (int g = 1; g < 9; ++g)
    for (const auto& p : phi.points)
      EXPECT_GT(projective_distance(S.elements[static_cast<std::size_t>(g)].lift * p, p), BigFloat::exp2(-8, kPrec));
}

TEST(Stabilizer, ConjugationCovariance) {
  std::mt19937_64 rng(67);
  std::uniform_int_distribution<int> d(-4, 4);
  FlexScheme phi = labeled(flex_points(fixture_cubic("C1-681")));
  ThetaStabilizer S = stabilizer(phi);
  Mat3<Rational> Mq;
  do {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) Mq(i, j) = d(rng);
  } while (sgn(Mq.det()) == 0);
  Mat3<BigComplex> M = to_complex(Mq, kPrec);
  ThetaStabilizer SM = stabilizer(phi.transformed(M));
  for (int g = 0; g < 9; ++g) {
    auto idx = find_element(SM, M * S.elements[static_cast<std::size_t>(g)].lift * M.inverse());
    ASSERT_TRUE(idx);
    EXPECT_EQ(*idx, g);
  }
}

TEST(WeilPairing, FermatGeneratorsGivePrimitiveRoot) {
  Mat3<BigComplex> g = omega_diag(), h = cyclic_shift();
  Mat3<BigComplex> C = g * h * g.inverse() * h.inverse();
  auto c = detail::matrix_ratio(C, Mat3<BigComplex>::identity(), threshold_for(kPrec));
  ASSERT_TRUE(c);
  EXPECT_NE(nearest_cube_root_exponent(*c), 0);
  ThetaStabilizer S = stabilizer(flex_points(fermat()));
  int gi = *find_element(S, g), hi = *find_element(S, h);
  EXPECT_EQ(S.pairing[static_cast<std::size_t>(gi)][static_cast<std::size_t>(hi)], nearest_cube_root_exponent(*c));
}

TEST(WeilPairing, AlternatingAndNondegenerate) {
  ThetaStabilizer S = stabilizer(flex_points(fixture_cubic("C1-681")));
  EXPECT_TRUE(pairing_alternating(S.pairing));
  EXPECT_TRUE(pairing_nondegenerate(S.pairing));
  for (int g = 0; g < 9; ++g) {
    EXPECT_EQ(S.pairing[static_cast<std::size_t>(g)][static_cast<std::size_t>(g)], 0);
    for (int h = 0; h < 9; ++h)
      EXPECT_EQ((S.pairing[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] +
                 S.pairing[static_cast<std::size_t>(h)][static_cast<std::size_t>(g)]) % 3, 0);
  }
}

TEST(AntiIsometry, FermatInverseTransposes) {
  ThetaStabilizer S = stabilizer(flex_points(fermat()));
  Mat3<BigComplex> g = omega_diag();
  Mat3<BigComplex> gt = g.inverse().transpose();
  Mat3<BigComplex> expect = Mat3<BigComplex>::diag(BigComplex(1L, kPrec), BigComplex::root_of_unity(2, 3, kPrec),
                                                   BigComplex::root_of_unity(1, 3, kPrec));
  EXPECT_TRUE(detail::matrix_ratio(gt, expect, threshold_for(kPrec)).has_value());
  EXPECT_TRUE(find_element(S, gt).has_value());
  Mat3<BigComplex> h = cyclic_shift();
  EXPECT_TRUE(detail::matrix_ratio(h.inverse().transpose(), h, threshold_for(kPrec)).has_value());
  EXPECT_TRUE(anti_isometry_check(flex_points(fermat())).passed());
}

TEST(AntiIsometry, ShaCubicAndRandomCubics) {
  AntiIsometryReport r = anti_isometry_check(flex_points(fixture_cubic("C1-681")));
  EXPECT_TRUE(r.maps_onto);
  EXPECT_TRUE(r.pairing_inverted);
  EXPECT_TRUE(r.passed());
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 2; ++trial) EXPECT_TRUE(anti_isometry_check(flex_points(random_smooth_cubic(rng))).passed());
}

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "support.hpp"
#include "vis3/genus2.hpp"

using namespace vis3;
using vis3::test::fixture_cubic;
using vis3::test::fixture_path;

namespace {

const RationalModel kE1(1, 1, 0, -1154, -15345);
const RationalModel kE2(0, -1, 1, 0, 2);

BilinearForm printed_681() { return io::bilinear_from(io::read_json_file(fixture_path("C-681.json"))); }

const SurfacePair& surface_681() {
  static const SurfacePair S = build_surface(kE1, fixture_cubic("C1-681"), kE2);
  return S;
}

const PipelineResult& pipeline_681(std::uint64_t seed = 0) {
  static std::map<std::uint64_t, PipelineResult> cache;
  auto it = cache.find(seed);
  if (it != cache.end()) return it->second;
  PipelineOptions o;
  o.seed = seed;
  o.target = kE2;
  o.expected = printed_681();
  return cache.emplace(seed, pipeline(kE1, fixture_cubic("C1-681"), o)).first->second;
}

}  // namespace

TEST(BuildSurface, Example681InWeierstrassCoordinates) {
  const auto& S = surface_681();
  EXPECT_TRUE(S.g_weierstrass);
  EXPECT_EQ(S.G, kE2.cubic());
  ASSERT_TRUE(S.equivalence.has_value());
  // the pencil member is the one through 55033 P - 235 Q
  auto member = fixture_cubic("P-681").scaled(55033) + fixture_cubic("Q-681").scaled(-235);
  EXPECT_TRUE(proportionality(S.pencil_member, member).has_value());
  EXPECT_TRUE(proportionality(S.pencil_member.act(*S.equivalence), kE2.cubic()).has_value());
  ASSERT_TRUE(S.certificate.has_value());
  EXPECT_NE(S.certificate->count1, S.certificate->count2);
}

TEST(BuildSurface, ErrorPaths) {
  EXPECT_THROW(
      {
        try {
          build_surface(kE1, fixture_cubic("C1-681"), kE1);
        } catch (const MathError& e) {
          EXPECT_EQ(e.kind(), ErrorKind::IsogenousPair);
          throw;
        }
      },
      MathError);
  auto singular = make_cubic({0, 0, 0, 0, 1, 0, 0, 0, 0, 0});
  try {
    build_surface(kE1, singular, kE2);
    FAIL() << "expected SingularInput";
  } catch (const MathError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularInput);
  }
}

TEST(SampleD, EmptyAndResiduals) {
  const auto& S = surface_681();
  EXPECT_TRUE(sample_D(S, 0).empty());
  auto samples = sample_D(S, 10, {512, 3});
  ASSERT_EQ(samples.size(), 10u);
  ComplexCubic Fc = to_complex(S.F, 576), Gc = to_complex(S.G, 576);
  for (const auto& s : samples) {
    EXPECT_LT(detail::cubic_residual(Fc, s.x), threshold_for(512));
    EXPECT_LT(detail::cubic_residual(Gc, s.u), threshold_for(512));
    EXPECT_LT(detail::bilinear_residual(S.incidence, s.x, s.u), threshold_for(512));
  }
}

TEST(SampleD, DotProductInvariantUnderContragredientPairs) {
  const auto& S = surface_681();
  auto samples = sample_D(S, 4, {512, 5});
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int trial = 0; trial < 5; ++trial) {
    Mat3<Rational> M;
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = d(rng);
    } while (sgn(M.det()) == 0);
    Mat3<BigComplex> A = to_complex(M, 576), B = to_complex(M.inverse_transpose(), 576);
    for (const auto& s : samples) {
      Vec3<BigComplex> u = to_complex(S.incidence.m, 576) * s.u;  // plain x . u' form
      BigComplex before = dot(s.x, u), after = dot(A * s.x, B * u);
      EXPECT_LT(abs(before - after), threshold_for(512));
    }
  }
}

TEST(Push, ThreeTorsionTranslatesCollapse) {
  const auto& S = surface_681();
  auto s = sample_D(S, 1, {512, 7})[0];
  // on a Weierstrass cubic with origin at a flex, the flexes are the 3-torsion
  FlexScheme t1 = flex_points(S.F, {576, 0, 8}), t2 = flex_points(S.G, {576, 0, 8});
  PointedCubic<BigComplex> A{to_complex(S.F, 576), to_complex(S.origin1, 576)};
  PointedCubic<BigComplex> B{to_complex(S.G, 576), to_complex(S.origin2, 576)};
  DSample base = push_3x3(s, S);
  for (int k = 0; k < 9; k += 4) {
    DSample moved{A.add(s.x, t1.points[static_cast<std::size_t>(k)]), B.add(s.u, t2.points[static_cast<std::size_t>(8 - k)])};
    DSample im = push_3x3(moved, S);
    EXPECT_LT(projective_distance(im.x, base.x), threshold_for(512));
    EXPECT_LT(projective_distance(im.u, base.u), threshold_for(512));
  }
}

TEST(Push, TwiceIsNine) {
  const auto& S = surface_681();
  auto s = sample_D(S, 1, {512, 9})[0];
  DSample twice = push_3x3(push_3x3(s, S), S);
  DSample nine = push_3x3(s, S, 9);
  EXPECT_LT(projective_distance(twice.x, nine.x), threshold_for(512));
  EXPECT_LT(projective_distance(twice.u, nine.u), threshold_for(512));
}

TEST(Interpolate, PlantedFormRecovered) {
  // a random form, sampled directly and pushed by [1]
  BilinearForm B = BilinearForm::from_row_major({3, -1, 7, 0, 2, -5, 11, 4, -2});
  SurfacePair S = weierstrass_surface(kE1, kE2, BilinearForm::incidence());
  std::vector<DSample> images;
  for (const auto& s : sample_D(S, 16, {512, 1}, B)) images.push_back(push_3x3(s, S, 1));
  EXPECT_EQ(interpolate_C(images, S, 512).form, B.canonical());
}

TEST(Interpolate, PrintedFormRecoveredThroughNegation) {
  // the printed curve is (-1)-invariant, so pushing its points by [-1] stays on it
  BilinearForm C = printed_681();
  SurfacePair S = weierstrass_surface(kE1, kE2, BilinearForm::incidence());
  std::vector<DSample> images;
  for (const auto& s : sample_D(S, 16, {512, 2}, C)) images.push_back(push_3x3(s, S, -1));
  CResult r = interpolate_C(images, S, 512);
  EXPECT_EQ(r.form, C.canonical());
  EXPECT_TRUE(r.involution_invariant);
  EXPECT_TRUE(r.distinct_from_incidence);
}

TEST(Interpolate, TooFewImages) {
  const auto& S = surface_681();
  std::vector<DSample> images;
  for (const auto& s : sample_D(S, 5, {512, 4})) images.push_back(push_3x3(s, S));
  try {
    interpolate_C(images, S, 512);
    FAIL() << "expected NullSpaceDimension";
  } catch (const MathError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NullSpaceDimension);
  }
}

TEST(Pipeline, Example681MatchesPrintedForm) {
  const auto& R = pipeline_681();
  ASSERT_TRUE(R.matches_expected.has_value());
  EXPECT_TRUE(*R.matches_expected) << R.curve.form.to_string();
  EXPECT_EQ(R.curve.form, printed_681().canonical());
  EXPECT_TRUE(R.curve.involution_invariant);
  EXPECT_TRUE(R.curve.distinct_from_incidence);
  EXPECT_FALSE(R.verification.vacuous);
  EXPECT_EQ(R.verification.samples, 20u);
  EXPECT_TRUE(R.verification.passed);
  EXPECT_FALSE(R.curve.origin_convention.empty());
}

TEST(Pipeline, SeedIndependent) { EXPECT_EQ(pipeline_681(0).curve.form, pipeline_681(5).curve.form); }

TEST(Pipeline, PrecisionDoublingStable) {
  const auto& R = pipeline_681();
  SampleOptions so{1024, 0};
  auto [samples, c] = fit_images(R.surface, so, 24);
  EXPECT_EQ(c.form, R.curve.form);
}

TEST(VerifyC, NegativeControlAndVacuous) {
  const auto& R = pipeline_681();
  CResult bad = R.curve;
  bad.form.m(0, 0) += 1;
  try {
    verify_C(bad, R.surface, 5);
    FAIL() << "expected VerificationFailed";
  } catch (const MathError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VerificationFailed);
  }
  VerifyReport v = verify_C(R.curve, R.surface, 0);
  EXPECT_TRUE(v.vacuous);
  EXPECT_TRUE(v.passed);
  EXPECT_EQ(v.samples, 0u);
}

TEST(ReducedModel, IntegralAndIsomorphic) {
  WeierstrassIso c{Rational(1, 6), 2, Rational(-1, 2), 3};
  RationalModel W = transform_model(kE2, c);
  RationalModel R = reduced_model(W);
  EXPECT_EQ(R, kE2);
  EXPECT_EQ(reduced_model(kE1), kE1);
}

TEST(Pipeline, Example2006WithoutTarget) {
  RationalModel E1(1, 1, 0, -58293654, -171333232940);
  PipelineOptions o;
  auto R = pipeline(E1, fixture_cubic("C1-2006"), o);
  ASSERT_TRUE(R.surface.certificate.has_value());
  EXPECT_NE(R.surface.certificate->count1, R.surface.certificate->count2);
  ASSERT_TRUE(R.surface.rational_point.has_value());
  EXPECT_EQ((*R.surface.delta_member)(*R.surface.rational_point), 0);
  EXPECT_TRUE(R.curve.involution_invariant);
  EXPECT_TRUE(R.curve.distinct_from_incidence);
  EXPECT_TRUE(R.verification.passed);
  EXPECT_EQ(R.verification.samples, 20u);
  EXPECT_FALSE(non_isogeny_certificate(R.surface.E1, R.surface.E2, 100) == std::nullopt);
}

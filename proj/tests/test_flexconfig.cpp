#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "vis3/flexconfig.hpp"

using namespace vis3;
using vis3::test::fermat;
using vis3::test::fixture_cubic;

namespace {

const long kPrec = 512;

Mat3<Rational> random_matrix(std::mt19937_64& rng, int r) {
  std::uniform_int_distribution<int> d(-r, r);
  for (;;) {
    Mat3<Rational> M;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M(i, j) = d(rng);
    if (sgn(M.det()) != 0) return M;
  }
}

TernaryCubic random_smooth_cubic(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-7, 7);
  for (;;) {
    std::vector<Rational> c;
    for (int i = 0; i < 10; ++i) c.emplace_back(d(rng));
    TernaryCubic F(3, c);
    if (!F.is_zero() && !is_singular(F).singular) return F;
  }
}

// closed form: [-z:1:0], [0:-z:1], [1:0:-z] for z^3 = 1
FlexScheme fermat_closed_form() {
  FlexScheme s;
  s.precision = kPrec;
  int k = 0;
  BigComplex one(1L, kPrec), zero = BigComplex::zero(kPrec);
  for (long e = 0; e < 3; ++e) {
    BigComplex z = -BigComplex::root_of_unity(e, 3, kPrec);
    s.points[static_cast<std::size_t>(k++)] = normalize_point({z, one, zero});
    s.points[static_cast<std::size_t>(k++)] = normalize_point({zero, z, one});
    s.points[static_cast<std::size_t>(k++)] = normalize_point({one, zero, z});
  }
  return s;
}

}  // namespace

TEST(FlexPoints, FermatMatchesClosedForm) {
  FlexScheme phi = flex_points(fermat());
  EXPECT_TRUE(same_point_set(phi, fermat_closed_form()));
}

TEST(FlexPoints, ShaCubicResiduals) {
  TernaryCubic C1 = fixture_cubic("C1-681");
  FlexScheme phi = flex_points(C1);
  ComplexCubic G = to_complex(C1, kPrec), H = to_complex(hessian(C1), kPrec);
  for (const auto& p : phi.points) {
    EXPECT_LT(abs(G(p)), threshold_for(kPrec) * coeff_norm(G));
    EXPECT_LT(abs(H(p)), threshold_for(kPrec) * coeff_norm(H));
  }
}

TEST(FlexPoints, LargeCoefficients) {
  FlexScheme phi = flex_points(fixture_cubic("F2006"));
  EXPECT_EQ(collinear_triples(phi).size(), 12u);
}

TEST(FlexPoints, RejectsSingular) { EXPECT_THROW(flex_points(vis3::test::xyz_cubic()), MathError); }

TEST(HesseLabeling, FermatMatchesTable) {
  FlexScheme phi = flex_points(fermat());
  HesseLabeling L = hesse_labeling(phi);
  FlexScheme lab = apply_labeling(phi, L);
  auto triples = collinear_triples(lab);
  ASSERT_EQ(triples.size(), 12u);
  std::vector<std::array<int, 3>> expect;
  for (const auto& tri : hesse_table())
    for (const auto& line : tri) expect.push_back({line[0] - 1, line[1] - 1, line[2] - 1});
  std::sort(expect.begin(), expect.end());
  std::sort(triples.begin(), triples.end());
  EXPECT_EQ(triples, expect);
}

TEST(HesseLabeling, TwelveLinesFourTrianglesEachPointOnFour) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 3; ++trial) {
    FlexScheme phi = flex_points(random_smooth_cubic(rng));
    auto triples = collinear_triples(phi);
    ASSERT_EQ(triples.size(), 12u);
    std::array<int, 9> count{};
    for (const auto& t : triples)
      for (int i : t) ++count[static_cast<std::size_t>(i)];
    for (int c : count) EXPECT_EQ(c, 4);
    EXPECT_NO_THROW(hesse_labeling(phi));
  }
}

TEST(HesseLabeling, InvariantUnderProjectiveMaps) {
  std::mt19937_64 rng(43);
  FlexScheme phi = flex_points(fixture_cubic("C1-681"));
  auto before = collinear_triples(phi);
  for (int trial = 0; trial < 3; ++trial) {
    FlexScheme moved = phi.transformed(to_complex(random_matrix(rng, 4), kPrec));
    EXPECT_EQ(collinear_triples(moved), before);
    EXPECT_EQ(hesse_labeling(moved).order, hesse_labeling(phi).order);
  }
}

TEST(DualScheme, FermatIsSelfDual) {
  FlexScheme phi = flex_points(fermat());
  EXPECT_TRUE(same_point_set(dual_scheme(phi), phi));
}

TEST(DualScheme, IsAnInvolution) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 5; ++trial) {
    FlexScheme phi = labeled(flex_points(random_smooth_cubic(rng)));
    FlexScheme dd = dual_scheme(dual_scheme(phi));
    EXPECT_TRUE(same_point_set(dd, phi));
  }
}

TEST(DualScheme, Contravariant) {
  std::mt19937_64 rng(53);
  FlexScheme phi = labeled(flex_points(fixture_cubic("C1-681")));
  for (int trial = 0; trial < 3; ++trial) {
    Mat3<Rational> M = random_matrix(rng, 4);
    FlexScheme lhs = dual_scheme(phi.transformed(to_complex(M, kPrec)));
    FlexScheme rhs = dual_scheme(phi).transformed(to_complex(M.inverse_transpose(), kPrec));
    EXPECT_TRUE(same_point_set(lhs, rhs));
  }
}

TEST(DualScheme, AgreesWithDualPencilFlexes) {
  for (const char* name : {"C1-681", "F681"}) {
    TernaryCubic F = fixture_cubic(name);
    FlexScheme dual = dual_scheme(flex_points(F));
    Pencil p = dual_pencil(F);
    // a smooth member of the dual pencil
    for (long s = 1;; ++s) {
      TernaryCubic G = p.member(Rational(s), Rational(1));
      if (is_singular(G).singular) continue;
      EXPECT_TRUE(same_point_set(dual, flex_points(G))) << name;
      break;
    }
    // every member vanishes on the dual scheme
    for (const auto& q : dual.points) {
      ComplexCubic A = to_complex(p.first(), kPrec), B = to_complex(p.second(), kPrec);
      EXPECT_LT(detail::cubic_residual(A, q), threshold_for(kPrec));
      EXPECT_LT(detail::cubic_residual(B, q), threshold_for(kPrec));
    }
  }
}

TEST(Triangles, AreSingularHesseMembers) {
  TernaryCubic F = fixture_cubic("C1-681");
  FlexScheme phi = labeled(flex_points(F));
  ComplexCubic A = to_complex(F, kPrec), B = to_complex(hessian(F), kPrec);
  for (int t = 0; t < 4; ++t) {
    ComplexCubic T = triangle_cubic(phi, t);
    Matrix<BigComplex> M(10, 3);
    for (std::size_t k = 0; k < 10; ++k) {
      M(k, 0) = A[k];
      M(k, 1) = B[k];
      M(k, 2) = T[k];
    }
    // columns dependent: the 10x3 system has a one-dimensional kernel
    auto ker = numeric_kernel(M, threshold_for(kPrec));
    EXPECT_EQ(ker.basis.size(), 1u);
  }
}

#pragma once

// Linear equivalence of smooth plane cubics through their flex
// configurations: a projectivity taking one curve to another permutes the
// nine flexes by an affine map of the label plane F_3^2.

#include <optional>
#include <vector>

#include "vis3/jinvariant.hpp"
#include "vis3/theta.hpp"

namespace vis3 {

struct EquivalenceOptions {
  long precision = kDefaultPrecision;
  std::uint64_t seed = 0;
};

namespace detail {

/// The 432 affine maps v -> A v + c of F_3^2, as label permutations.
inline std::vector<std::array<int, 9>> affine_label_maps() {
  std::vector<std::array<int, 9>> out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          if (((a * d - b * c) % 3 + 3) % 3 == 0) continue;
          for (int t = 0; t < 9; ++t) {
            auto tv = label_coords(t);
            std::array<int, 9> m;
            for (int i = 0; i < 9; ++i) {
              auto v = label_coords(i);
              m[static_cast<std::size_t>(i)] = coords_label(a * v[0] + b * v[1] + tv[0], c * v[0] + d * v[1] + tv[1]);
            }
            out.push_back(m);
          }
        }
  return out;
}

inline std::optional<Mat3<Rational>> reconstruct_matrix(const Mat3<BigComplex>& m, long prec) {
  ProjTransform n = ProjTransform::normalized(m);
  Mat3<Rational> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto q = reconstruct_numeric(n.lift(i, j), prec);
      if (!q) return std::nullopt;
      r(i, j) = *q;
    }
  return r;
}

}  // namespace detail

/// An exact M with G2 o M proportional to G1, or nothing. Every returned
/// matrix has been checked by exact substitution.
inline std::optional<Mat3<Rational>> linear_equivalence(const TernaryCubic& G1, const TernaryCubic& G2,
                                                        const EquivalenceOptions& opt = {}) {
  const long prec = opt.precision;
  const long wp = prec + 64;
  if (is_singular(G1, {prec, opt.seed, 4}).singular || is_singular(G2, {prec, opt.seed, 4}).singular)
    throw MathError(ErrorKind::SingularInput, "linear_equivalence needs smooth cubics");
  // cheap necessary condition
  if (j_exact(G1, {prec, opt.seed}) != j_exact(G2, {prec, opt.seed})) return std::nullopt;
  FlexScheme p1 = labeled(flex_points(G1, {wp, opt.seed, 8}));
  FlexScheme p2 = labeled(flex_points(G2, {wp, opt.seed, 8}));
  auto base = general_position_labels(p1);
  ComplexCubic C1 = to_complex(G1, wp), C2 = to_complex(G2, wp);
  const BigFloat tol = threshold_for(prec);
  for (const auto& lm : detail::affine_label_maps()) {
    std::array<Vec3<BigComplex>, 4> src, dst;
    for (std::size_t k = 0; k < 4; ++k) {
      int lab = base[k];
      src[k] = p1.points[static_cast<std::size_t>(lab)];
      dst[k] = p2.points[static_cast<std::size_t>(lm[static_cast<std::size_t>(lab)])];
    }
    Mat3<BigComplex> M;
    try {
      M = map_from_four_points(src, dst);
    } catch (const MathError&) {
      continue;
    }
    bool ok = true;
    for (int i = 0; i < 9 && ok; ++i)
      ok = projective_distance(normalize_point(M * p1.points[static_cast<std::size_t>(i)]),
                               p2.points[static_cast<std::size_t>(lm[static_cast<std::size_t>(i)])]) < tol;
    if (!ok) continue;
    auto Mq = detail::reconstruct_matrix(M, prec);
    if (!Mq || sgn(Mq->det()) == 0) continue;
    if (proportionality(G2.act(*Mq), G1)) return Mq;
  }
  return std::nullopt;
}

}  // namespace vis3

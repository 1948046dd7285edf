#pragma once

// The projective stabilizer of a flex scheme (a group of order 9 acting by
// translations on the labels), its Weil pairing read off scalar
// commutators, and the inverse-transpose comparison with the dual scheme.

#include <array>
#include <optional>

#include "vis3/flexconfig.hpp"

namespace vis3 {

struct ProjTransform {
  Mat3<BigComplex> lift;

  /// Scales so the largest-modulus entry is 1.
  static ProjTransform normalized(const Mat3<BigComplex>& m) {
    int bi = 0, bj = 0;
    BigFloat best = BigFloat::zero(m(0, 0).prec());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (norm(m(i, j)) > best) {
          best = norm(m(i, j));
          bi = i;
          bj = j;
        }
    if (best.is_zero()) throw MathError(ErrorKind::InternalError, "zero matrix is not a projective transform");
    BigComplex inv = BigComplex(1L, m(0, 0).prec()) / m(bi, bj);
    Mat3<BigComplex> r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = m(i, j) * inv;
    return {r};
  }
};

namespace detail {

inline BigFloat mat_norm(const Mat3<BigComplex>& m) {
  BigFloat s = BigFloat::zero(m(0, 0).prec());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += norm(m(i, j));
  return sqrt(s);
}

/// Scalar c with a = c b, if the matrices are proportional within tol
/// (relative).
inline std::optional<BigComplex> matrix_ratio(const Mat3<BigComplex>& a, const Mat3<BigComplex>& b, const BigFloat& tol) {
  int bi = 0, bj = 0;
  BigFloat best = BigFloat::zero(b(0, 0).prec());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (norm(b(i, j)) > best) {
        best = norm(b(i, j));
        bi = i;
        bj = j;
      }
  if (best.is_zero()) return std::nullopt;
  BigComplex c = a(bi, bj) / b(bi, bj);
  BigFloat scale = mat_norm(a);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (abs(a(i, j) - c * b(i, j)) > tol * scale) return std::nullopt;
  return c;
}

}  // namespace detail

inline bool projectively_equal(const ProjTransform& a, const ProjTransform& b, const BigFloat& tol) {
  return detail::matrix_ratio(a.lift, b.lift, tol).has_value();
}

/// The projective map sending src[i] to dst[i] for four points in general
/// position.
inline Mat3<BigComplex> map_from_four_points(const std::array<Vec3<BigComplex>, 4>& src,
                                             const std::array<Vec3<BigComplex>, 4>& dst) {
  auto frame = [](const std::array<Vec3<BigComplex>, 4>& p) {
    Mat3<BigComplex> A = Mat3<BigComplex>::from_columns(p[0], p[1], p[2]);
    Vec3<BigComplex> lam = A.inverse() * p[3];
    return Mat3<BigComplex>::from_columns(
        {p[0][0] * lam[0], p[0][1] * lam[0], p[0][2] * lam[0]},
        {p[1][0] * lam[1], p[1][1] * lam[1], p[1][2] * lam[1]},
        {p[2][0] * lam[2], p[2][1] * lam[2], p[2][2] * lam[2]});
  };
  return frame(dst) * frame(src).inverse();
}

/// Element index 3a+b is the translation by (a, b) on labels.
inline int translate_label(int label_idx, int element) {
  auto p = label_coords(label_idx);
  auto t = label_coords(element);
  return coords_label(p[0] + t[0], p[1] + t[1]);
}

inline int compose_elements(int g, int h) {
  auto a = label_coords(g), b = label_coords(h);
  return coords_label(a[0] + b[0], a[1] + b[1]);
}

inline int inverse_element(int g) {
  auto a = label_coords(g);
  return coords_label(-a[0], -a[1]);
}

struct ThetaStabilizer {
  std::array<ProjTransform, 9> elements;         // element 0 is the identity
  std::array<std::array<int, 9>, 9> cayley{};    // index of g*h
  std::array<std::array<int, 9>, 9> pairing{};   // e(g,h) = omega^k, omega = exp(2 pi i / 3)
  long precision = kDefaultPrecision;
};

/// Four labels of the scheme with no three points collinear.
inline std::array<int, 4> general_position_labels(const FlexScheme& phi) {
  BigFloat margin = BigFloat::exp2(-phi.precision / 4, phi.precision);
  auto coll = [&](int a, int b, int c) {
    return detail::collinearity(phi.points[static_cast<std::size_t>(a)], phi.points[static_cast<std::size_t>(b)],
                                phi.points[static_cast<std::size_t>(c)]) < margin;
  };
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b)
      for (int c = b + 1; c < 9; ++c)
        for (int d = c + 1; d < 9; ++d)
          if (!coll(a, b, c) && !coll(a, b, d) && !coll(a, c, d) && !coll(b, c, d)) return {a, b, c, d};
  throw MathError(ErrorKind::BadConfiguration, "no four flexes in general position");
}

/// Index of the cube root of unity nearest to c; requires a clear margin.
inline int nearest_cube_root_exponent(const BigComplex& c) {
  long prec = c.prec();
  int best = -1;
  BigFloat bd;
  for (long k = 0; k < 3; ++k) {
    BigFloat d = abs(c - BigComplex::root_of_unity(k, 3, prec));
    if (best < 0 || d < bd) {
      bd = d;
      best = static_cast<int>(k);
    }
  }
  if (bd > BigFloat::exp2(-prec / 4, prec))
    throw MathError(ErrorKind::NonScalarCommutator, "commutator scalar is not a cube root of unity");
  return best;
}

/// Weil pairing from scalar commutators of the lifts.
inline std::array<std::array<int, 9>, 9> weil_pairing_table(const ThetaStabilizer& S) {
  std::array<std::array<int, 9>, 9> out{};
  BigFloat tol = threshold_for(S.precision);
  for (int g = 0; g < 9; ++g)
    for (int h = 0; h < 9; ++h) {
      const auto& A = S.elements[static_cast<std::size_t>(g)].lift;
      const auto& B = S.elements[static_cast<std::size_t>(h)].lift;
      Mat3<BigComplex> C = A * B * A.inverse() * B.inverse();
      auto c = detail::matrix_ratio(C, Mat3<BigComplex>::identity(), tol);
      if (!c) throw MathError(ErrorKind::NonScalarCommutator, "commutator of lifts is not scalar");
      out[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] = nearest_cube_root_exponent(*c);
    }
  return out;
}

/// The 9 projective transformations preserving the (labeled) scheme. The
/// translation by (a, b) is built from four point correspondences and
/// checked on all nine points.
inline ThetaStabilizer stabilizer(const FlexScheme& phi_in) {
  FlexScheme phi = labeled(phi_in);
  const long prec = phi.precision;
  BigFloat thr = threshold_for(prec);
  ThetaStabilizer S;
  S.precision = prec;
  auto base = general_position_labels(phi);
  for (int g = 0; g < 9; ++g) {
    std::array<Vec3<BigComplex>, 4> src, dst;
    for (int k = 0; k < 4; ++k) {
      int lab = base[static_cast<std::size_t>(k)];
      src[static_cast<std::size_t>(k)] = phi.points[static_cast<std::size_t>(lab)];
      dst[static_cast<std::size_t>(k)] = phi.points[static_cast<std::size_t>(translate_label(lab, g))];
    }
    Mat3<BigComplex> M = map_from_four_points(src, dst);
    for (int i = 0; i < 9; ++i) {
      auto img = M * phi.points[static_cast<std::size_t>(i)];
      if (projective_distance(img, phi.points[static_cast<std::size_t>(translate_label(i, g))]) > thr)
        throw MathError(ErrorKind::BadConfiguration, "translation map does not preserve the flex scheme");
    }
    S.elements[static_cast<std::size_t>(g)] = ProjTransform::normalized(M);
  }
  for (int g = 0; g < 9; ++g)
    for (int h = 0; h < 9; ++h) {
      Mat3<BigComplex> P = S.elements[static_cast<std::size_t>(g)].lift * S.elements[static_cast<std::size_t>(h)].lift;
      int gh = compose_elements(g, h);
      if (!detail::matrix_ratio(P, S.elements[static_cast<std::size_t>(gh)].lift, thr))
        throw MathError(ErrorKind::BadConfiguration, "stabilizer is not closed under composition");
      S.cayley[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] = gh;
    }
  S.pairing = weil_pairing_table(S);
  return S;
}

/// Index of the element of S equal to T projectively, if any.
inline std::optional<int> find_element(const ThetaStabilizer& S, const Mat3<BigComplex>& T) {
  BigFloat tol = threshold_for(S.precision);
  for (int g = 0; g < 9; ++g)
    if (detail::matrix_ratio(T, S.elements[static_cast<std::size_t>(g)].lift, tol)) return g;
  return std::nullopt;
}

inline bool pairing_alternating(const std::array<std::array<int, 9>, 9>& e) {
  for (int g = 0; g < 9; ++g) {
    if (e[static_cast<std::size_t>(g)][static_cast<std::size_t>(g)] != 0) return false;
    for (int h = 0; h < 9; ++h)
      if ((e[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] + e[static_cast<std::size_t>(h)][static_cast<std::size_t>(g)]) % 3 != 0)
        return false;
  }
  return true;
}

inline bool pairing_nondegenerate(const std::array<std::array<int, 9>, 9>& e) {
  for (int g = 1; g < 9; ++g) {
    bool some = false;
    for (int h = 0; h < 9; ++h) some = some || e[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] != 0;
    if (!some) return false;
  }
  return true;
}

struct AntiIsometryReport {
  ThetaStabilizer first, second;  // of the scheme and of its dual
  std::array<int, 9> lambda{};    // element g of the first maps to lambda[g] of the second
  bool maps_onto = false;
  bool pairing_inverted = false;
  bool alternating = false;
  bool nondegenerate = false;
  bool passed() const { return maps_onto && pairing_inverted && alternating && nondegenerate; }
};

/// Inverse transpose sends the stabilizer of the scheme onto that of its
/// dual and inverts the pairing.
inline AntiIsometryReport anti_isometry_check(const FlexScheme& phi_in) {
  FlexScheme phi = labeled(phi_in);
  AntiIsometryReport r;
  r.first = stabilizer(phi);
  r.second = stabilizer(dual_scheme(phi));
  r.maps_onto = true;
  std::array<bool, 9> hit{};
  for (int g = 0; g < 9; ++g) {
    auto idx = find_element(r.second, r.first.elements[static_cast<std::size_t>(g)].lift.inverse().transpose());
    if (!idx || hit[static_cast<std::size_t>(*idx)]) {
      r.maps_onto = false;
      break;
    }
    hit[static_cast<std::size_t>(*idx)] = true;
    r.lambda[static_cast<std::size_t>(g)] = *idx;
  }
  r.alternating = pairing_alternating(r.first.pairing) && pairing_alternating(r.second.pairing);
  r.nondegenerate = pairing_nondegenerate(r.first.pairing) && pairing_nondegenerate(r.second.pairing);
  if (r.maps_onto) {
    r.pairing_inverted = true;
    for (int g = 0; g < 9; ++g)
      for (int h = 0; h < 9; ++h) {
        int k1 = r.first.pairing[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)];
        int k2 = r.second.pairing[static_cast<std::size_t>(r.lambda[static_cast<std::size_t>(g)])]
                                 [static_cast<std::size_t>(r.lambda[static_cast<std::size_t>(h)])];
        if ((k1 + k2) % 3 != 0) r.pairing_inverted = false;
      }
  }
  return r;
}

}  // namespace vis3

#pragma once

// Long Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6,
// their invariants, and the linear reduction of a cubic at a flex.

#include <array>
#include <optional>

#include "vis3/flexconfig.hpp"

namespace vis3 {

template <class T>
struct WeierstrassModel {
  T a1{0}, a2{0}, a3{0}, a4{0}, a6{0};

  WeierstrassModel() = default;
  WeierstrassModel(T a1_, T a2_, T a3_, T a4_, T a6_)
      : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)), a6(std::move(a6_)) {}

  std::array<T, 5> coefficients() const { return {a1, a2, a3, a4, a6}; }

  T b2() const { return a1 * a1 + T(4) * a2; }
  T b4() const { return T(2) * a4 + a1 * a3; }
  T b6() const { return a3 * a3 + T(4) * a6; }
  T b8() const { return a1 * a1 * a6 + T(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
  T c4() const { return b2() * b2() - T(24) * b4(); }
  T c6() const { return -b2() * b2() * b2() + T(36) * b2() * b4() - T(216) * b6(); }
  T discriminant() const {
    T B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - T(8) * B4 * B4 * B4 - T(27) * B6 * B6 + T(9) * B2 * B4 * B6;
  }
  T j() const {
    T d = discriminant();
    if (vis3::is_zero(d)) throw MathError(ErrorKind::SingularInput, "j-invariant of a singular model");
    T c = c4();
    return c * c * c / d;
  }

  /// y^2 z + a1 xyz + a3 yz^2 - x^3 - a2 x^2 z - a4 xz^2 - a6 z^3
  TernaryForm<T> cubic() const {
    TernaryForm<T> F(3);
    F.coeff(0, 2, 1) = T(1);
    F.coeff(1, 1, 1) = a1;
    F.coeff(0, 1, 2) = a3;
    F.coeff(3, 0, 0) = T(-1);
    F.coeff(2, 0, 1) = -a2;
    F.coeff(1, 0, 2) = -a4;
    F.coeff(0, 0, 3) = -a6;
    return F;
  }

  /// The (-1) map (x, y, z) -> (x, -y - a1 x - a3 z, z).
  Mat3<T> involution() const {
    Mat3<T> N = Mat3<T>::zero();
    N(0, 0) = T(1);
    N(1, 0) = -a1;
    N(1, 1) = T(-1);
    N(1, 2) = -a3;
    N(2, 2) = T(1);
    return N;
  }

  friend bool operator==(const WeierstrassModel& a, const WeierstrassModel& b) {
    return a.coefficients() == b.coefficients();
  }
};

using RationalModel = WeierstrassModel<Rational>;

inline RationalModel model_from(const std::array<Rational, 5>& a) { return {a[0], a[1], a[2], a[3], a[4]}; }

inline std::string to_string(const RationalModel& W) {
  std::string s = "[";
  auto c = W.coefficients();
  for (std::size_t i = 0; i < 5; ++i) s += (i ? "," : "") + c[i].get_str();
  return s + "]";
}

/// Parses "a1,a2,a3,a4,a6".
inline RationalModel parse_model(const std::string& text) {
  std::array<Rational, 5> a;
  std::size_t start = 0;
  for (int i = 0; i < 5; ++i) {
    std::size_t comma = text.find(',', start);
    if ((i < 4) != (comma != std::string::npos)) throw ParseError("expected five comma-separated coefficients");
    a[static_cast<std::size_t>(i)] = parse_rational(text.substr(start, comma == std::string::npos ? comma : comma - start));
    start = comma + 1;
  }
  RationalModel W = model_from(a);
  if (sgn(W.discriminant()) == 0) throw MathError(ErrorKind::SingularInput, "singular Weierstrass model");
  return W;
}

/// Result of moving a flex to [0:1:0] with tangent w = 0: G o transform is
/// scale * W.cubic().
template <class T>
struct FlexReduction {
  WeierstrassModel<T> model;
  Mat3<T> transform;
  T scale;
};

namespace detail {

template <class T>
BigFloat magnitude(const T& v, long prec) {
  if constexpr (std::is_same_v<T, Rational>) {
    return abs(BigFloat(v, prec));
  } else {
    return abs(v);
  }
}

}  // namespace detail

/// Reduces G at the flex p (exact for rational input, numeric otherwise).
template <class T>
FlexReduction<T> reduce_at_flex(const TernaryForm<T>& G, const Vec3<T>& p, long prec = kDefaultPrecision) {
  Vec3<T> l = G.gradient(p);
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (detail::magnitude(l[static_cast<std::size_t>(i)], prec) > detail::magnitude(l[static_cast<std::size_t>(k)], prec)) k = i;
  if (vis3::is_zero(l[static_cast<std::size_t>(k)])) throw MathError(ErrorKind::SingularInput, "flex is a singular point");
  Vec3<T> ek{T(0), T(0), T(0)};
  ek[static_cast<std::size_t>(k)] = T(1);
  // c1 on the tangent line and independent of p
  Mat3<T> best;
  BigFloat best_det = BigFloat::zero(prec);
  for (int m = 0; m < 3; ++m) {
    Vec3<T> em{T(0), T(0), T(0)};
    em[static_cast<std::size_t>(m)] = T(1);
    Vec3<T> c1 = cross(l, em);
    Mat3<T> M = Mat3<T>::from_columns(c1, p, ek);
    BigFloat d = detail::magnitude(M.det(), prec);
    if (d > best_det) {
      best_det = d;
      best = M;
    }
  }
  if (best_det.is_zero()) throw MathError(ErrorKind::InternalError, "no frame at the flex");
  TernaryForm<T> Gp = G.act(best);
  // coefficients: [0] u^3, [2] u^2 w, [4] uvw, [5] u w^2, [7] v^2 w, [8] v w^2, [9] w^3
  const T& a = Gp[0];
  const T& D = Gp[2];
  const T& B = Gp[4];
  const T& E = Gp[5];
  const T& A = Gp[7];
  const T& C = Gp[8];
  const T& F = Gp[9];
  if (vis3::is_zero(A) || vis3::is_zero(a)) throw MathError(ErrorKind::SingularInput, "degenerate cubic at the flex");
  T K = -a / A;
  FlexReduction<T> r;
  r.model = WeierstrassModel<T>(B / A, -D / A, C * K / A, -E * K / A, -F * K * K / A);
  r.transform = best * Mat3<T>::diag(T(1), T(1), K);
  r.scale = A * K;
  return r;
}

}  // namespace vis3

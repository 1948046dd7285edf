#pragma once

// Chord-tangent arithmetic on pointed plane cubics, reduction to Weierstrass
// form, isomorphism of Weierstrass models, point counts and point search.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "vis3/jinvariant.hpp"

namespace vis3 {

// ---------------------------------------------------------------------------
// Group law on a pointed cubic, projective coordinates

namespace detail {

inline bool same_point(const Vec3<Rational>& a, const Vec3<Rational>& b) {
  auto c = cross(a, b);
  return sgn(c[0]) == 0 && sgn(c[1]) == 0 && sgn(c[2]) == 0;
}
inline bool same_point(const Vec3<BigComplex>& a, const Vec3<BigComplex>& b) {
  long prec = a[0].prec();
  return projective_distance(a, b) < BigFloat::exp2(-prec / 3, prec);
}

inline Vec3<Rational> tidy(const Vec3<Rational>& p) {
  std::vector<Rational> v{p[0], p[1], p[2]};
  make_primitive(v);
  return {v[0], v[1], v[2]};
}
inline Vec3<BigComplex> tidy(const Vec3<BigComplex>& p) { return normalize_point(p); }

template <class T>
bool zero_vec(const Vec3<T>& p) {
  return vis3::is_zero(p[0]) && vis3::is_zero(p[1]) && vis3::is_zero(p[2]);
}

}  // namespace detail

/// A smooth plane cubic with a chosen point as the group origin.
template <class T>
struct PointedCubic {
  TernaryForm<T> cubic;
  Vec3<T> origin;

  /// Third intersection of the line through p and q with the cubic (the
  /// tangent line when p = q).
  Vec3<T> third(const Vec3<T>& p, const Vec3<T>& q) const {
    if (!detail::same_point(p, q)) {
      // G(mu p + lam q) = mu lam (b mu + c lam)
      T b = dot(cubic.gradient(p), q);
      T c = dot(cubic.gradient(q), p);
      Vec3<T> r{c * p[0] - b * q[0], c * p[1] - b * q[1], c * p[2] - b * q[2]};
      if (detail::zero_vec(r)) throw MathError(ErrorKind::DegenerateIntersection, "line lies on the cubic");
      return detail::tidy(r);
    }
    Vec3<T> l = cubic.gradient(p);
    // a second point on the tangent line
    Vec3<T> q2;
    BigFloat best = BigFloat::zero(64);
    for (int k = 0; k < 3; ++k) {
      Vec3<T> e{T(0), T(0), T(0)};
      e[static_cast<std::size_t>(k)] = T(1);
      Vec3<T> cand = cross(l, e);
      Vec3<T> x = cross(cand, p);
      BigFloat m = BigFloat::zero(64);
      for (const auto& c : x) m = max(m, detail::magnitude(c, 64));
      if (m > best) {
        best = m;
        q2 = cand;
      }
    }
    if (best.is_zero()) throw MathError(ErrorKind::SingularInput, "tangent at a singular point");
    T c = dot(cubic.gradient(q2), p);
    T d = cubic(q2);
    Vec3<T> r{d * p[0] - c * q2[0], d * p[1] - c * q2[1], d * p[2] - c * q2[2]};
    if (detail::zero_vec(r)) throw MathError(ErrorKind::DegenerateIntersection, "tangent line lies on the cubic");
    return detail::tidy(r);
  }

  Vec3<T> add(const Vec3<T>& p, const Vec3<T>& q) const { return third(origin, third(p, q)); }
  Vec3<T> negate(const Vec3<T>& p) const { return third(p, third(origin, origin)); }

  Vec3<T> mul(long m, const Vec3<T>& p) const {
    if (m < 0) return mul(-m, negate(p));
    if (m == 0) return origin;
    if (m == 3) return add(add(p, p), p);
    Vec3<T> result = origin, base = p;
    bool first = true;
    while (m > 0) {
      if (m & 1) {
        result = first ? base : add(result, base);
        first = false;
      }
      m >>= 1;
      if (m > 0) base = add(base, base);
    }
    return result;
  }
};

template <class T>
PointedCubic<T> weierstrass_pointed(const WeierstrassModel<T>& W) {
  return {W.cubic(), Vec3<T>{T(0), T(1), T(0)}};
}

inline PointedCubic<BigComplex> to_complex(const PointedCubic<Rational>& C, long prec) {
  return {to_complex(C.cubic, prec), to_complex(C.origin, prec)};
}

// ---------------------------------------------------------------------------
// Reduction of a pointed cubic to Weierstrass form

namespace detail {

inline std::optional<Rational> rational_root(const Rational& q, unsigned n) {
  if (sgn(q) < 0 && n % 2 == 0) return std::nullopt;
  Integer a = abs(q.get_num()), b = q.get_den(), ra, rb;
  if (!mpz_root(ra.get_mpz_t(), a.get_mpz_t(), n) || !mpz_root(rb.get_mpz_t(), b.get_mpz_t(), n)) return std::nullopt;
  Rational r(sgn(q) < 0 ? Integer(-ra) : ra, rb);
  r.canonicalize();
  return r;
}

}  // namespace detail

/// Quadratic forms in three variables as TernaryForm<Rational> of degree 2.
using Conic = TernaryForm<Rational>;

struct NagellResult {
  RationalModel model;
  bool linear = false;          // origin is a flex: both maps are linear
  Mat3<Rational> transform;     // linear case: curve point = transform * model point
  // Non-flex case: x = k l1 / T, y = k g0 / T^2 on the model.
  Rational k;
  Conic tangent, l1, g0;        // degree-1, degree-1, degree-2 forms
  Vec3<Rational> origin, o1;    // origin and the third point on its tangent
  TernaryCubic cubic;

  /// Curve point -> model point (projective); the origin maps to [0:1:0].
  template <class T>
  Vec3<T> forward(const Vec3<T>& p) const;
  /// Model point -> curve point.
  template <class T>
  Vec3<T> inverse(const Vec3<T>& q) const;

 private:
  // both formulas vanish at o1; x is the slope ratio along the tangent to
  // the curve there, y the root of the model equation that maps back to o1
  template <class T>
  Vec3<T> forward_o1(const Vec3<T>& like) const;
};

namespace detail {

template <class T>
T eval_form(const Conic& f, const Vec3<T>& p) {
  if constexpr (std::is_same_v<T, Rational>) {
    return f(p);
  } else {
    return to_complex(f, p[0].prec())(p);
  }
}

template <class T>
Vec3<T> lift(const Vec3<Rational>& v, const Vec3<T>& like) {
  if constexpr (std::is_same_v<T, Rational>) {
    (void)like;
    return v;
  } else {
    return to_complex(v, like[0].prec());
  }
}

template <class T>
T lift_scalar(const Rational& q, const Vec3<T>& like) {
  if constexpr (std::is_same_v<T, Rational>) {
    (void)like;
    return q;
  } else {
    return to_complex(q, like[0].prec());
  }
}

}  // namespace detail

template <class T>
Vec3<T> NagellResult::forward(const Vec3<T>& p) const {
  if (linear) {
    if constexpr (std::is_same_v<T, Rational>) {
      return detail::tidy(transform.inverse() * p);
    } else {
      return detail::tidy(to_complex(transform.inverse(), p[0].prec()) * p);
    }
  }
  if (detail::same_point(p, detail::lift(origin, p))) return Vec3<T>{T(0), T(1), T(0)};
  if (detail::same_point(p, detail::lift(o1, p))) return forward_o1(p);
  T t = detail::eval_form(tangent, p);
  T l = detail::eval_form(l1, p);
  T g = detail::eval_form(g0, p);
  T kk = detail::lift_scalar(k, p);
  Vec3<T> r{kk * l * t, kk * g, t * t};
  if (detail::zero_vec(r)) throw MathError(ErrorKind::DegenerateIntersection, "base point of the Weierstrass map");
  return detail::tidy(r);
}

template <class T>
Vec3<T> NagellResult::forward_o1(const Vec3<T>& like) const {
  Vec3<Rational> t1 = cubic.gradient(o1);
  Vec3<Rational> w;
  for (int e = 0; e < 3; ++e) {
    Vec3<Rational> ev{0, 0, 0};
    ev[static_cast<std::size_t>(e)] = 1;
    w = cross(t1, ev);
    if (!detail::zero_vec(w) && !detail::same_point(w, o1)) break;
  }
  Rational x = k * l1(w) / tangent(w);
  // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
  Rational b = model.a1 * x + model.a3;
  Rational c = -(x * x * x + model.a2 * x * x + model.a4 * x + model.a6);
  Rational disc = b * b - 4 * c;
  auto check = [&](const Vec3<Rational>& q) { return detail::same_point(inverse(q), o1); };
  std::optional<Vec3<Rational>> hit;
  if (auto r = detail::rational_root(disc, 2)) {
    for (int sgn_ : {1, -1}) {
      Vec3<Rational> q{x, (-b + sgn_ * *r) / 2, 1};
      if (!hit && check(q)) hit = detail::tidy(q);
    }
  }
  if (!hit) throw MathError(ErrorKind::InternalError, "image of the residual tangent point");
  return detail::lift(*hit, like);
}

template <class T>
Vec3<T> NagellResult::inverse(const Vec3<T>& q) const {
  if (linear) {
    if constexpr (std::is_same_v<T, Rational>) {
      return detail::tidy(transform * q);
    } else {
      return detail::tidy(to_complex(transform, q[0].prec()) * q);
    }
  }
  if (vis3::is_zero(q[2])) return detail::lift(origin, q);
  // the model point has x = X/(kZ); the curve point lies on l1 - x T = 0
  T kk = detail::lift_scalar(k, q);
  T kz = kk * q[2];
  Vec3<T> L;
  for (int i = 0; i < 3; ++i) {
    T li = detail::lift_scalar(l1.coeffs()[static_cast<std::size_t>(i)], q);
    T ti = detail::lift_scalar(tangent.coeffs()[static_cast<std::size_t>(i)], q);
    L[static_cast<std::size_t>(i)] = kz * li - q[0] * ti;
  }
  Vec3<T> O1 = detail::lift(o1, q);
  Vec3<T> V;
  BigFloat best = BigFloat::zero(64);
  for (int e = -1; e < 3; ++e) {
    Vec3<T> cand;
    if (e < 0) {
      cand = cross(L, O1);
    } else {
      Vec3<T> ev{T(0), T(0), T(0)};
      ev[static_cast<std::size_t>(e)] = T(1);
      cand = cross(L, ev);
    }
    Vec3<T> x = cross(cand, O1);
    BigFloat m = BigFloat::zero(64);
    for (const auto& c : x) m = max(m, detail::magnitude(c, 64));
    if (m > best) {
      best = m;
      V = cand;
    }
  }
  T tv = detail::eval_form(tangent, V);
  // g0(O1 + lam V) = lam g1 + lam^2 g2
  Vec3<T> grad;
  for (int i = 0; i < 3; ++i) {
    Conic d = g0.partial(i);
    grad[static_cast<std::size_t>(i)] = detail::eval_form(d, O1);
  }
  T g1 = dot(grad, V);
  T g2 = detail::eval_form(g0, V);
  T c0 = q[1] * tv * tv - kz * g2;
  T c1 = kz * g1;
  Vec3<T> r{c0 * O1[0] + c1 * V[0], c0 * O1[1] + c1 * V[1], c0 * O1[2] + c1 * V[2]};
  if (detail::zero_vec(r)) throw MathError(ErrorKind::DegenerateIntersection, "inverse map undefined here");
  return detail::tidy(r);
}

/// Reduction of a pointed cubic to a Weierstrass model with explicit maps.
/// At a flex the reduction is linear; otherwise x = l1/T and y = g0/T^2,
/// where T is the tangent at the origin, l1 a line through the residual
/// point O1 of T, and g0 a conic through the origin meeting the curve twice
/// at O1.
inline NagellResult nagell(const TernaryCubic& G, const Vec3<Rational>& origin) {
  if (sgn(G(origin)) != 0) throw MathError(ErrorKind::BadConfiguration, "origin is not on the cubic");
  if (is_singular(G).singular) throw MathError(ErrorKind::SingularInput, "nagell of a singular cubic");
  NagellResult R;
  R.cubic = G;
  R.origin = detail::tidy(origin);
  // already Weierstrass with origin [0:1:0]: identity maps
  if (detail::same_point(R.origin, Vec3<Rational>{0, 1, 0}) && sgn(G[7]) != 0 && sgn(G[1]) == 0 && sgn(G[3]) == 0 &&
      sgn(G[6]) == 0 && G[0] == -G[7]) {
    const Rational& c = G[7];
    R.linear = true;
    R.model = RationalModel(G[4] / c, -G[2] / c, G[8] / c, -G[5] / c, -G[9] / c);
    R.transform = Mat3<Rational>::identity();
    return R;
  }
  PointedCubic<Rational> C{G, R.origin};
  Vec3<Rational> o1 = C.third(R.origin, R.origin);
  if (detail::same_point(o1, R.origin)) {
    auto red = reduce_at_flex(G, R.origin);
    R.linear = true;
    R.model = red.model;
    R.transform = red.transform;
    return R;
  }
  R.o1 = o1;
  Vec3<Rational> tl = G.gradient(R.origin);
  R.tangent = Conic::linear(tl[0], tl[1], tl[2]);
  // l1: line through o1 and a coordinate point off the tangent
  for (int k = 0; k < 3; ++k) {
    Vec3<Rational> e{0, 0, 0};
    e[static_cast<std::size_t>(k)] = 1;
    if (sgn(R.tangent(e)) == 0) continue;
    Vec3<Rational> l = cross(o1, e);
    R.l1 = Conic::linear(l[0], l[1], l[2]);
    break;
  }
  // conics through the origin, through o1, tangent to G at o1
  Vec3<Rational> t1 = G.gradient(o1);
  Vec3<Rational> w;  // a point on the tangent at o1 other than o1
  for (int k = 0; k < 3; ++k) {
    Vec3<Rational> e{0, 0, 0};
    e[static_cast<std::size_t>(k)] = 1;
    Vec3<Rational> cand = cross(t1, e);
    if (!detail::zero_vec(cand) && !detail::same_point(cand, o1)) {
      w = cand;
      break;
    }
  }
  Matrix<Rational> A(3, 6);
  for (std::size_t c = 0; c < 6; ++c) {
    Conic basis(2);
    basis[c] = 1;
    A(0, c) = basis(R.origin);
    A(1, c) = basis(o1);
    A(2, c) = dot(basis.gradient(o1), w);
  }
  auto ker = kernel_basis(A);
  Conic T2 = R.tangent * R.tangent, Tl = R.tangent * R.l1;
  bool found = false;
  for (const auto& v : ker) {
    Matrix<Rational> S;
    S.append_row(T2.coeffs());
    S.append_row(Tl.coeffs());
    S.append_row(v);
    if (rank(S) == 3) {
      R.g0 = Conic(2, v);
      found = true;
      break;
    }
  }
  if (!found) throw MathError(ErrorKind::InternalError, "no conic for the y-coordinate");
  // relation among g0^2, l1^3 T, l1 g0 T, l1^2 T^2, g0 T^2, l1 T^3, T^4 modulo G
  const Conic& T = R.tangent;
  const Conic& l = R.l1;
  const Conic& g = R.g0;
  std::array<Conic, 7> f = {g * g, l * l * l * T, l * g * T, l * l * T * T, g * T * T, l * T * T * T, T * T * T * T};
  Matrix<Rational> M(15, 10);
  for (int i = 0; i < 7; ++i)
    for (std::size_t r = 0; r < 15; ++r) M(r, static_cast<std::size_t>(i)) = f[static_cast<std::size_t>(i)][r];
  for (int i = 0; i < 3; ++i) {
    Conic li(1);
    li[static_cast<std::size_t>(i)] = 1;
    Conic prod = G * li;
    for (std::size_t r = 0; r < 15; ++r) M(r, static_cast<std::size_t>(7 + i)) = -prod[r];
  }
  auto rel = kernel_basis(M);
  if (rel.size() != 1) throw MathError(ErrorKind::InternalError, "Weierstrass relation is not unique");
  const auto& c = rel[0];
  if (sgn(c[0]) == 0 || sgn(c[1]) == 0) throw MathError(ErrorKind::InternalError, "degenerate Weierstrass relation");
  // c0 y^2 + c1 x^3 + c2 xy + c3 x^2 + c4 y + c5 x + c6 = 0
  Rational k = -c[1] / c[0];
  R.k = k;
  R.model = RationalModel(c[2] / c[0], -c[3] / c[0], c[4] * k / c[0], -c[5] * k / c[0], -c[6] * k * k / c[0]);
  if (sgn(R.model.discriminant()) == 0) throw MathError(ErrorKind::InternalError, "reduction produced a singular model");
  return R;
}

// ---------------------------------------------------------------------------
// Isomorphism over Q

struct WeierstrassIso {
  Rational u, r, s, t;
};

/// Applies x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
inline RationalModel transform_model(const RationalModel& W, const WeierstrassIso& c) {
  const Rational &u = c.u, &r = c.r, &s = c.s, &t = c.t;
  Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  return RationalModel((W.a1 + 2 * s) / u, (W.a2 - s * W.a1 + 3 * r - s * s) / u2, (W.a3 + r * W.a1 + 2 * t) / u3,
                       (W.a4 - s * W.a3 + 2 * r * W.a2 - (t + r * s) * W.a1 + 3 * r * r - 2 * s * t) / u4,
                       (W.a6 + r * W.a4 + r * r * W.a2 + r * r * r - t * W.a3 - t * t - r * t * W.a1) / u6);
}


/// (u, r, s, t) taking W1 to W2, if the models are isomorphic over Q.
inline std::optional<WeierstrassIso> isomorphic_over_Q(const RationalModel& W1, const RationalModel& W2) {
  if (W1.j() != W2.j()) return std::nullopt;
  Rational c4 = W1.c4(), c6 = W1.c6(), c4p = W2.c4(), c6p = W2.c6();
  std::optional<Rational> u2;
  if (sgn(c4) != 0 && sgn(c6) != 0) {
    u2 = c6 * c4p / (c6p * c4);
  } else if (sgn(c4) == 0) {
    u2 = detail::rational_root(c6 / c6p, 3);
  } else {
    u2 = detail::rational_root(c4 / c4p, 2);
  }
  if (!u2 || sgn(*u2) <= 0) return std::nullopt;
  auto u = detail::rational_root(*u2, 2);
  if (!u) return std::nullopt;
  WeierstrassIso c;
  c.u = *u;
  c.s = (c.u * W2.a1 - W1.a1) / 2;
  c.r = (c.u * c.u * W2.a2 - W1.a2 + c.s * W1.a1 + c.s * c.s) / 3;
  c.t = (c.u * c.u * c.u * W2.a3 - W1.a3 - c.r * W1.a1) / 2;
  if (transform_model(W1, c) == W2) return c;
  return std::nullopt;
}

/// Matrix of the isomorphism on cubic models: W1.cubic() o M is
/// proportional to W2.cubic().
inline Mat3<Rational> iso_matrix(const WeierstrassIso& c) {
  Mat3<Rational> M = Mat3<Rational>::zero();
  M(0, 0) = c.u * c.u;
  M(0, 2) = c.r;
  M(1, 0) = c.s * c.u * c.u;
  M(1, 1) = c.u * c.u * c.u;
  M(1, 2) = c.t;
  M(2, 2) = 1;
  return M;
}

// ---------------------------------------------------------------------------
// Integral models of small discriminant

namespace detail {

/// Prime factors found by trial division up to `limit`; an unfactored
/// cofactor is returned as one more entry (treated like a prime).
inline std::vector<Integer> trial_factors(Integer n, unsigned long limit = 100000) {
  std::vector<Integer> out;
  n = abs(n);
  if (n == 0) return out;
  for (unsigned long p = 2; p <= limit && n > 1; ++p) {
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
    out.emplace_back(p);
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Integral a-invariants with the given integral c4, c6, if they exist.
inline std::optional<RationalModel> model_from_c4c6(const Integer& c4, const Integer& c6) {
  for (long b2 = -5; b2 <= 6; ++b2) {
    Integer t = b2 * b2 - c4;
    if (t % 24 != 0) continue;
    Integer b4 = t / 24;
    Integer s = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
    if (s % 216 != 0) continue;
    Integer b6 = s / 216;
    Integer a1 = ((b2 % 2) + 2) % 2;
    Integer a3 = ((b6 % 2) + 2) % 2;
    Integer r2 = b2 - a1 * a1, r4 = b4 - a1 * a3, r6 = b6 - a3 * a3;
    if (r2 % 4 != 0 || r4 % 2 != 0 || r6 % 4 != 0) continue;
    RationalModel W(Rational(a1), Rational(r2 / 4), Rational(a3), Rational(r4 / 2), Rational(r6 / 4));
    if (W.c4() == Rational(c4) && W.c6() == Rational(c6)) return W;
  }
  return std::nullopt;
}

}  // namespace detail

/// An integral model isomorphic to W over Q, with the scale removed at every
/// prime trial division finds (minimal there, not certified elsewhere).
/// Keeps numeric work on E2 well conditioned.
inline RationalModel reduced_model(const RationalModel& W) {
  Rational c4 = W.c4(), c6 = W.c6();
  // clear denominators: c4 u^4, c6 u^6 integral
  Integer u = 1;
  for (const auto& p : detail::trial_factors(c4.get_den() * c6.get_den())) {
    while (true) {
      Rational pu = Rational(u);
      Rational a = c4 * pu * pu * pu * pu, b = c6 * pu * pu * pu * pu * pu * pu;
      if (a.get_den() % p != 0 && b.get_den() % p != 0) break;
      u *= p;
    }
  }
  Rational U(u);
  Rational q4 = c4 * U * U * U * U, q6 = c6 * U * U * U * U * U * U;
  Integer C4 = q4.get_num(), C6 = q6.get_num();
  // remove p-th powers while an integral model survives
  for (const auto& p : detail::trial_factors(gcd(C4, C6))) {
    Integer p4 = p * p * p * p, p6 = p4 * p * p;
    while ((C4 % p4 == 0) && (C6 % p6 == 0) && detail::model_from_c4c6(C4 / p4, C6 / p6)) {
      C4 /= p4;
      C6 /= p6;
    }
  }
  auto M = detail::model_from_c4c6(C4, C6);
  if (!M || !isomorphic_over_Q(W, *M)) return W;
  return *M;
}

// ---------------------------------------------------------------------------
// Point counts and non-isogeny

namespace detail {

inline long mod_of(const Rational& q, long p) {
  Integer n = q.get_num() % p, d = q.get_den() % p;
  long nn = n.get_si(), dd = d.get_si();
  nn = ((nn % p) + p) % p;
  dd = ((dd % p) + p) % p;
  // dd invertible by the caller's choice of p
  long inv = 1, base = dd, e = p - 2;
  while (e > 0) {
    if (e & 1) inv = static_cast<long>((static_cast<__int128>(inv) * base) % p);
    base = static_cast<long>((static_cast<__int128>(base) * base) % p);
    e >>= 1;
  }
  return static_cast<long>((static_cast<__int128>(nn) * inv) % p);
}

inline bool divides(long p, const Integer& n) { return n != 0 && mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)) != 0; }

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// Good reduction at p for this model (integral at p, p does not divide the
/// discriminant).
inline bool good_prime(const RationalModel& W, long p) {
  for (const auto& a : W.coefficients())
    if (detail::divides(p, a.get_den())) return false;
  Rational d = W.discriminant();
  return !detail::divides(p, d.get_num());
}

/// #E(F_p), including the point at infinity, by brute force.
inline long count_points(const RationalModel& W, long p) {
  long a1 = detail::mod_of(W.a1, p), a2 = detail::mod_of(W.a2, p), a3 = detail::mod_of(W.a3, p),
       a4 = detail::mod_of(W.a4, p), a6 = detail::mod_of(W.a6, p);
  long n = 1;
  for (long x = 0; x < p; ++x) {
    long rhs = ((((x * x) % p * x) % p + a2 * ((x * x) % p) + a4 * x + a6) % p + p) % p;
    for (long y = 0; y < p; ++y) {
      long lhs = ((y * y) % p + a1 * ((x * y) % p) + a3 * y) % p;
      if (lhs == rhs) ++n;
    }
  }
  return n;
}

struct NonIsogenyCertificate {
  long prime;
  long count1, count2;
};

inline std::optional<NonIsogenyCertificate> non_isogeny_certificate(const RationalModel& W1, const RationalModel& W2,
                                                                    long prime_bound) {
  for (long p = 2; p <= prime_bound; ++p) {
    if (!detail::is_prime(p) || !good_prime(W1, p) || !good_prime(W2, p)) continue;
    long n1 = count_points(W1, p), n2 = count_points(W2, p);
    if (n1 != n2) return NonIsogenyCertificate{p, n1, n2};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rational point search

namespace detail {

struct ModularCubic {
  long p;
  std::array<long, 10> c;
  long eval(long x, long y, long z) const {
    auto m = [&](long v) { return ((v % p) + p) % p; };
    long X = m(x), Y = m(y), Z = m(z);
    std::array<long, 4> px{1, X, X * X % p, X * X % p * X % p};
    std::array<long, 4> py{1, Y, Y * Y % p, Y * Y % p * Y % p};
    std::array<long, 4> pz{1, Z, Z * Z % p, Z * Z % p * Z % p};
    __int128 s = 0;
    for (std::size_t k = 0; k < 10; ++k) {
      Exponent e = TernaryCubic::exponent(3, k);
      s += static_cast<__int128>(c[k]) * (px[static_cast<std::size_t>(e.x)] * py[static_cast<std::size_t>(e.y)] % p) % p *
           pz[static_cast<std::size_t>(e.z)];
    }
    return static_cast<long>(s % p);
  }
};

}  // namespace detail

/// Primitive integer triples with max-norm <= bound (first nonzero entry
/// positive) on G = 0, in lexicographic order. Candidates are filtered
/// modulo two primes before the exact check.
inline std::vector<Vec3<Rational>> point_search(const TernaryCubic& G, long bound) {
  std::vector<Rational> c = G.coeffs();
  make_primitive(c);
  std::vector<Integer> ci;
  for (const auto& q : c) ci.push_back(q.get_num());
  std::array<detail::ModularCubic, 2> mods;
  const long primes[2] = {2147483629L, 2147483587L};
  for (int m = 0; m < 2; ++m) {
    mods[static_cast<std::size_t>(m)].p = primes[m];
    for (std::size_t k = 0; k < 10; ++k) {
      Integer r = ci[k] % primes[m];
      long v = r.get_si();
      mods[static_cast<std::size_t>(m)].c[k] = ((v % primes[m]) + primes[m]) % primes[m];
    }
  }
  std::vector<Vec3<Rational>> out;
  auto check = [&](long x, long y, long z) {
    if (std::gcd(std::gcd(std::labs(x), std::labs(y)), std::labs(z)) != 1) return;
    for (const auto& m : mods)
      if (m.eval(x, y, z) != 0) return;
    Vec3<Rational> p{Rational(x), Rational(y), Rational(z)};
    if (sgn(G(p)) == 0) out.push_back(p);
  };
  for (long x = 0; x <= bound; ++x)
    for (long y = (x == 0 ? 0 : -bound); y <= bound; ++y)
      for (long z = (x == 0 && y == 0 ? 1 : -bound); z <= (x == 0 && y == 0 ? 1 : bound); ++z) check(x, y, z);
  std::sort(out.begin(), out.end(), [](const Vec3<Rational>& a, const Vec3<Rational>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return out;
}

}  // namespace vis3

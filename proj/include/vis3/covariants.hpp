#pragma once

// Invariant theory of ternary cubics: the Hessian covariant, the Caylean
// contravariant, smoothness testing, pencils of cubics and the dual pencil
// through the dual flex scheme.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "vis3/forms.hpp"
#include "vis3/reconstruct.hpp"
#include "vis3/resultant.hpp"
#include "vis3/roots.hpp"

namespace vis3 {

namespace detail {

/// Determinant of a 3x3 matrix of forms.
template <class T>
TernaryForm<T> form_det3(const std::array<std::array<TernaryForm<T>, 3>, 3>& a) {
  TernaryForm<T> t0 = a[1][1] * a[2][2] - a[1][2] * a[2][1];
  TernaryForm<T> t1 = a[1][0] * a[2][2] - a[1][2] * a[2][0];
  TernaryForm<T> t2 = a[1][0] * a[2][1] - a[1][1] * a[2][0];
  return a[0][0] * t0 - a[0][1] * t1 + a[0][2] * t2;
}

inline void require_cubic(const TernaryCubic& F) {
  if (F.degree() != 3) throw MathError(ErrorKind::InternalError, "expected a ternary cubic");
}

/// Random integer matrix with entries in [-r, r] and nonzero determinant.
inline Mat3<Rational> random_unimodularish(std::mt19937_64& rng, int r = 3) {
  std::uniform_int_distribution<int> d(-r, r);
  for (;;) {
    Mat3<Rational> M;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M(i, j) = d(rng);
    if (sgn(M.det()) != 0) return M;
  }
}

}  // namespace detail

/// H(F) = -1/2 det(d^2 F / dx_i dx_j).
inline TernaryCubic hessian(const TernaryCubic& F) {
  detail::require_cubic(F);
  std::array<TernaryForm<Rational>, 3> d1 = {F.partial(0), F.partial(1), F.partial(2)};
  std::array<std::array<TernaryForm<Rational>, 3>, 3> h;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h[i][j] = d1[i].partial(j);
  return detail::form_det3(h).scaled(Rational(-1, 2));
}

/// P(F) = -det(grad F at (0,z,-y), (-z,0,x), (y,-x,0)) / (xyz).
inline TernaryCubic caylean(const TernaryCubic& F) {
  detail::require_cubic(F);
  Mat3<Rational> subs[3];
  subs[0] = Mat3<Rational>::zero();  // (0, z, -y)
  subs[0](1, 2) = 1;
  subs[0](2, 1) = -1;
  subs[1] = Mat3<Rational>::zero();  // (-z, 0, x)
  subs[1](0, 2) = -1;
  subs[1](2, 0) = 1;
  subs[2] = Mat3<Rational>::zero();  // (y, -x, 0)
  subs[2](0, 1) = 1;
  subs[2](1, 0) = -1;
  std::array<TernaryForm<Rational>, 3> d1 = {F.partial(0), F.partial(1), F.partial(2)};
  std::array<std::array<TernaryForm<Rational>, 3>, 3> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = d1[j].act(subs[i]);
  TernaryForm<Rational> det = detail::form_det3(m);
  TernaryCubic out(3);
  for (std::size_t k = 0; k < det.size(); ++k) {
    if (sgn(det[k]) == 0) continue;
    Exponent e = TernaryForm<Rational>::exponent(6, k);
    if (e.x < 1 || e.y < 1 || e.z < 1)
      throw MathError(ErrorKind::InternalError, "Caylean determinant not divisible by xyz");
    out.coeff(e.x - 1, e.y - 1, e.z - 1) = -det[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smoothness

struct SingularityReport {
  bool singular = false;
  std::optional<Vec3<BigComplex>> witness;
  std::optional<Vec3<Rational>> rational_witness;  // exactly verified
};

struct SingularityOptions {
  long precision = kDefaultPrecision;
  std::uint64_t seed = 0;
  int attempts = 4;
};

namespace detail {

inline BinaryForm<Rational> binary_gcd(const BinaryForm<Rational>& a, const BinaryForm<Rational>& b) {
  if (a.is_zero_form()) return b;
  if (b.is_zero_form()) return a;
  int inf = std::min(a.infinity_multiplicity(), b.infinity_multiplicity());
  UniPoly<Rational> g = gcd(a.dehomogenize(), b.dehomogenize());
  int d = static_cast<int>(g.degree()) + inf;
  return BinaryForm<Rational>(d, g.coeffs());
}

inline std::optional<Vec3<Rational>> rationalize_point(const Vec3<BigComplex>& p, long prec) {
  Vec3<BigComplex> n = normalize_point(p);
  Vec3<Rational> r;
  for (int i = 0; i < 3; ++i) {
    auto q = reconstruct_numeric(n[i], prec);
    if (!q) return std::nullopt;
    r[i] = *q;
  }
  std::vector<Rational> v(r.begin(), r.end());
  make_primitive(v);
  return Vec3<Rational>{v[0], v[1], v[2]};
}

}  // namespace detail

/// Decides whether the three partial derivatives of G share a projective
/// zero. After a random change of coordinates the pairwise z-resultants of
/// the partials are computed exactly; a trivial gcd proves smoothness. A
/// nontrivial gcd is followed up numerically to locate a witness point.
inline SingularityReport is_singular(const TernaryCubic& G, const SingularityOptions& opt = {}) {
  detail::require_cubic(G);
  if (G.is_zero()) throw MathError(ErrorKind::InternalError, "is_singular of the zero form");
  const long prec = opt.precision;
  std::mt19937_64 rng(opt.seed ^ 0x5eed5eedULL);
  bool all_nontrivial = true;
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    Mat3<Rational> T = detail::random_unimodularish(rng);
    TernaryCubic Gt = G.act(T);
    std::array<TernaryForm<Rational>, 3> d = {Gt.partial(0), Gt.partial(1), Gt.partial(2)};
    bool full = true;
    for (const auto& q : d)
      if (sgn(q.coeff(0, 0, 2)) == 0) full = false;
    if (!full) continue;
    BinaryForm<Rational> r01 = resultant_z(d[0], d[1]);
    BinaryForm<Rational> r02 = resultant_z(d[0], d[2]);
    BinaryForm<Rational> r12 = resultant_z(d[1], d[2]);
    BinaryForm<Rational> g = detail::binary_gcd(detail::binary_gcd(r01, r02), r12);
    if (!g.is_zero_form() && g.degree == 0) {
      all_nontrivial = false;
      return SingularityReport{};
    }
    // Candidate projections: roots of g, or of any partial's x-eliminant when
    // two partials share a component (g == 0).
    std::vector<ProjectiveRoot> cands;
    if (g.is_zero_form()) {
      // Common component: intersect the line/conic with the third partial by
      // sampling roots of r(partial, third) over all pairs.
      for (const auto* r : {&r01, &r02, &r12})
        if (!r->is_zero_form())
          for (auto& c : binary_form_roots(*r, prec, {opt.seed, 0})) cands.push_back(c);
    } else {
      cands = binary_form_roots(g, prec, {opt.seed, 0});
    }
    std::array<ComplexCubic, 3> dc;
    for (int i = 0; i < 3; ++i) {
      std::vector<BigComplex> c;
      for (const auto& q : d[i].coeffs()) c.emplace_back(q, prec);
      dc[i] = ComplexCubic(2, std::move(c));
    }
    BigFloat scale = BigFloat::zero(prec);
    for (const auto& q : dc)
      for (const auto& e : q.coeffs()) scale = max(scale, abs(e));
    BigFloat thr = threshold_for(prec) * scale;
    Mat3<BigComplex> Tc = to_complex(T, prec);
    for (const auto& c : cands) {
      for (int i = 0; i < 3; ++i) {
        // roots in z of partial i restricted to the fiber over [x:y]
        std::vector<BigComplex> zc(3, BigComplex::zero(prec));
        for (std::size_t k = 0; k < dc[i].size(); ++k) {
          Exponent e = ComplexCubic::exponent(2, k);
          BigComplex term = dc[i][k];
          for (int t = 0; t < e.x; ++t) term *= c.x;
          for (int t = 0; t < e.y; ++t) term *= c.y;
          zc[static_cast<std::size_t>(e.z)] += term;
        }
        UniPoly<BigComplex> zp(zc);
        if (zp.degree() < 1) continue;
        for (const auto& z : complex_roots(zp, prec, {opt.seed, 0})) {
          Vec3<BigComplex> pt = normalize_point({c.x, c.y, z});
          bool ok = true;
          for (const auto& q : dc)
            if (abs(q(pt)) > thr) ok = false;
          if (!ok) continue;
          SingularityReport rep;
          rep.singular = true;
          Vec3<BigComplex> orig = normalize_point(Tc * pt);
          rep.witness = orig;
          if (auto rp = detail::rationalize_point(orig, prec)) {
            bool exact = true;
            for (int v = 0; v < 3; ++v)
              if (sgn(G.partial(v)(*rp)) != 0) exact = false;
            if (exact) rep.rational_witness = rp;
          }
          return rep;
        }
        break;
      }
    }
  }
  if (all_nontrivial)
    throw PrecisionError(ErrorKind::Inconclusive, "common resultant factor without a located singular point");
  return SingularityReport{};
}

// ---------------------------------------------------------------------------
// Pencils

/// Projective parameter (s:t) of the member s*A + t*B.
struct PencilParameter {
  Rational s, t;

  /// Coprime integers, first nonzero entry positive.
  PencilParameter canonical() const {
    std::vector<Rational> v{s, t};
    make_primitive(v);
    return {v[0], v[1]};
  }
  friend bool operator==(const PencilParameter& a, const PencilParameter& b) {
    return a.s * b.t == a.t * b.s;
  }
};

class Pencil {
 public:
  Pencil(TernaryCubic a, TernaryCubic b) : a_(std::move(a)), b_(std::move(b)) {
    detail::require_cubic(a_);
    detail::require_cubic(b_);
    Matrix<Rational> M(2, 10);
    for (std::size_t k = 0; k < 10; ++k) {
      M(0, k) = a_[k];
      M(1, k) = b_[k];
    }
    if (rank(M) != 2) throw MathError(ErrorKind::DegeneratePencil, "pencil basis is linearly dependent");
  }
  const TernaryCubic& first() const { return a_; }
  const TernaryCubic& second() const { return b_; }
  TernaryCubic member(const Rational& s, const Rational& t) const { return a_.scaled(s) + b_.scaled(t); }
  TernaryCubic member(const PencilParameter& p) const { return member(p.s, p.t); }
  ComplexCubic member(const BigComplex& s, const BigComplex& t, long prec) const {
    return to_complex(a_, prec).scaled(s) + to_complex(b_, prec).scaled(t);
  }
  /// (s, t) with G = s*A + t*B, if G lies in the span.
  std::optional<PencilParameter> coordinates(const TernaryCubic& G) const {
    Matrix<Rational> M(10, 2);
    std::vector<Rational> rhs(10);
    for (std::size_t k = 0; k < 10; ++k) {
      M(k, 0) = a_[k];
      M(k, 1) = b_[k];
      rhs[k] = G[k];
    }
    // least-squares-free exact check via the 2 pivot rows
    Matrix<Rational> aug(10, 3);
    for (std::size_t k = 0; k < 10; ++k) {
      aug(k, 0) = a_[k];
      aug(k, 1) = b_[k];
      aug(k, 2) = -G[k];
    }
    auto ker = kernel_basis(aug);
    for (auto& v : ker)
      if (sgn(v[2]) != 0) return PencilParameter{v[0] / v[2], v[1] / v[2]};
    return std::nullopt;
  }
  bool contains(const TernaryCubic& G) const { return G.is_zero() || coordinates(G).has_value(); }

 private:
  TernaryCubic a_, b_;
};

inline Pencil hesse_pencil(const TernaryCubic& F) { return Pencil(F, hessian(F)); }

inline const std::vector<PencilParameter>& default_dual_parameters() {
  static const std::vector<PencilParameter> p = {
      {1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}};
  return p;
}

namespace detail {

inline Pencil span_pencil(const std::vector<TernaryCubic>& cubics) {
  Matrix<Rational> M;
  for (const auto& c : cubics) M.append_row(c.coeffs());
  auto rows = row_space_basis(M);
  if (rows.size() != 2)
    throw MathError(ErrorKind::RankDeficient,
                    "sampled Cayleans span " + std::to_string(rows.size()) + " dimensions, expected 2");
  for (auto& r : rows) make_primitive(r);
  return Pencil(TernaryCubic(3, rows[0]), TernaryCubic(3, rows[1]));
}

}  // namespace detail

/// The pencil of cubics through the dual flex scheme, computed as the span
/// of the Cayleans of members of the Hesse pencil s*F + t*H(F). The basis is
/// the reduced row echelon basis of that span, each row made primitive.
inline Pencil dual_pencil(const TernaryCubic& F, const std::vector<PencilParameter>& params,
                          const SingularityOptions& opt = {}) {
  detail::require_cubic(F);
  if (is_singular(F, opt).singular) throw MathError(ErrorKind::SingularInput, "dual_pencil of a singular cubic");
  TernaryCubic H = hessian(F);
  std::vector<TernaryCubic> cays;
  for (const auto& p : params) cays.push_back(caylean(F.scaled(p.s) + H.scaled(p.t)));
  Matrix<Rational> M;
  for (const auto& c : cays) M.append_row(c.coeffs());
  if (rank(M) < 2) {
    for (PencilParameter extra : {PencilParameter{3, 1}, PencilParameter{1, 2}, PencilParameter{1, 3},
                                  PencilParameter{5, -2}, PencilParameter{7, 3}})
      cays.push_back(caylean(F.scaled(extra.s) + H.scaled(extra.t)));
  }
  return detail::span_pencil(cays);
}

inline Pencil dual_pencil(const TernaryCubic& F, const SingularityOptions& opt = {}) {
  return dual_pencil(F, default_dual_parameters(), opt);
}

/// Same span test: both pencils span the same 2-dimensional space.
inline bool same_span(const Pencil& a, const Pencil& b) {
  return a.contains(b.first()) && a.contains(b.second());
}

// ---------------------------------------------------------------------------
// Singular members

struct SingularMembers {
  BinaryForm<Rational> condition;          // quartic in (s, t) vanishing at singular members
  std::vector<PencilParameter> rational;   // exact rational singular parameters
  std::vector<ProjectiveRoot> all;         // numeric roots of the condition with multiplicity
  int total_count = 0;                     // with multiplicity
};

/// Singular members of a pencil closed under the Hessian (a Hesse pencil,
/// or a dual pencil). The Hessian maps the pencil to itself by a degree-3
/// map of P^1; its four fixed points are exactly the singular members
/// (triangles), so the condition is the exact binary quartic
/// alpha(s,t)*t - beta(s,t)*s where H(sA+tB) = alpha*A + beta*B.
inline SingularMembers singular_members(const Pencil& pen, const SingularityOptions& opt = {}) {
  const TernaryCubic& A = pen.first();
  const TernaryCubic& B = pen.second();
  TernaryCubic h0 = hessian(A);
  TernaryCubic h3 = hessian(B);
  TernaryCubic hp = hessian(A + B);
  TernaryCubic hm = hessian(A - B);
  TernaryCubic s1 = hp - h0 - h3;
  TernaryCubic s2 = hm - h0 + h3;
  TernaryCubic h2 = (s1 + s2).scaled(Rational(1, 2));
  TernaryCubic h1 = (s1 - s2).scaled(Rational(1, 2));
  std::array<TernaryCubic, 4> hk = {h0, h1, h2, h3};
  std::array<Rational, 4> al, be;
  for (int k = 0; k < 4; ++k) {
    auto c = pen.coordinates(hk[static_cast<std::size_t>(k)]);
    if (hk[static_cast<std::size_t>(k)].is_zero()) c = PencilParameter{0, 0};
    if (!c) throw MathError(ErrorKind::DegeneratePencil, "pencil is not closed under the Hessian");
    al[static_cast<std::size_t>(k)] = c->s;
    be[static_cast<std::size_t>(k)] = c->t;
  }
  // alpha*t - beta*s with alpha = sum al_k s^(3-k) t^k
  std::vector<Rational> q(5, Rational(0));
  for (int k = 0; k < 4; ++k) {
    q[static_cast<std::size_t>(3 - k)] += al[static_cast<std::size_t>(k)];
    q[static_cast<std::size_t>(4 - k)] -= be[static_cast<std::size_t>(k)];
  }
  SingularMembers out;
  out.condition = BinaryForm<Rational>(4, q);
  if (out.condition.is_zero_form()) throw MathError(ErrorKind::DegeneratePencil, "Hessian acts trivially on the pencil");
  out.all = binary_form_roots(out.condition, opt.precision, {opt.seed, 0});
  for (const auto& r : out.all) {
    out.total_count += r.multiplicity;
    auto rs = reconstruct_numeric(r.x, opt.precision);
    auto rt = reconstruct_numeric(r.y, opt.precision);
    if (!rs || !rt) continue;
    PencilParameter p = PencilParameter{*rs, *rt}.canonical();
    if (sgn(out.condition(p.s, p.t)) != 0) continue;
    if (!is_singular(pen.member(p), opt).singular)
      throw MathError(ErrorKind::WrongCount, "Hessian fixed point is a smooth member");
    out.rational.push_back(p);
  }
  if (out.total_count != 4) throw MathError(ErrorKind::WrongCount, "singular member count is not 4");
  return out;
}

}  // namespace vis3

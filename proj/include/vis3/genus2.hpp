#pragma once

// The genus-2 curve on E1 x E2: choose E2 in the dual pencil of E1's
// cubic, sample the incidence curve xu + yv + zw = 0 on the product,
// multiply both factors by 3 and interpolate the bilinear form through the
// images.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vis3/ellcurve.hpp"
#include "vis3/equivalence.hpp"

namespace vis3 {

struct SurfaceOptions {
  long precision = kDefaultPrecision;
  std::uint64_t seed = 0;
  long height_bound = 100;  // for the rational point on a delta-pencil member
  long prime_bound = 100;   // for the non-isogeny certificate
};

struct SurfacePair {
  TernaryCubic F, G;             // E1 in (x,y,z), E2 in (u,v,w)
  Vec3<Rational> origin1{0, 1, 0}, origin2{0, 1, 0};
  Mat3<Rational> inv1, inv2;     // exact (-1) maps about the origins
  // [3] is taken about origin + shift on each factor (P -> 3P - 2 shift)
  std::optional<Vec3<Rational>> shift1, shift2;
  BilinearForm incidence = BilinearForm::incidence();
  RationalModel E1, E2;
  bool g_weierstrass = false;    // G is E2.cubic()

  // how G was found
  PencilParameter parameter;     // in dual_pencil(F)
  TernaryCubic pencil_member;
  std::optional<Mat3<Rational>> equivalence;  // pencil coordinates = equivalence * Weierstrass coordinates
  std::optional<Vec3<Rational>> rational_point;  // on the delta-pencil member, when E2 was searched for
  std::optional<TernaryCubic> delta_member;
  std::optional<NonIsogenyCertificate> certificate;
  std::vector<std::string> flags;
};

namespace detail {

/// Exact rational flexes of G, from the numeric flex scheme.
inline std::vector<Vec3<Rational>> rational_flexes(const TernaryCubic& G, long prec, std::uint64_t seed) {
  FlexScheme phi = flex_points(G, {prec + 64, seed, 8});
  TernaryCubic H = hessian(G);
  std::vector<Vec3<Rational>> out;
  for (const auto& p : phi.points) {
    Vec3<BigComplex> n = normalize_point(p);
    Vec3<Rational> q;
    bool ok = true;
    for (std::size_t i = 0; i < 3 && ok; ++i) {
      auto r = reconstruct_numeric(n[i], prec);
      ok = r.has_value();
      if (ok) q[i] = *r;
    }
    if (!ok || sgn(G(q)) != 0 || sgn(H(q)) != 0) continue;
    q = tidy(q);
    bool dup = false;
    for (const auto& e : out) dup = dup || same_point(e, q);
    if (!dup) out.push_back(q);
  }
  std::sort(out.begin(), out.end(), [](const Vec3<Rational>& a, const Vec3<Rational>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return out;
}

/// Rational points of P^2 by increasing max-norm, first nonzero entry positive.
inline std::vector<Vec3<Rational>> plane_points(long bound, std::size_t limit) {
  std::vector<Vec3<Rational>> out;
  for (long h = 1; h <= bound && out.size() < limit; ++h)
    for (long x = 0; x <= h && out.size() < limit; ++x)
      for (long y = (x == 0 ? 0 : -h); y <= h && out.size() < limit; ++y)
        for (long z = -h; z <= h && out.size() < limit; ++z) {
          if (x == 0 && y == 0 && z <= 0) continue;
          if (x == 0 && y == 0 && z != 1) continue;
          if (std::max({std::labs(x), std::labs(y), std::labs(z)}) != h) continue;
          if (std::gcd(std::gcd(std::labs(x), std::labs(y)), std::labs(z)) != 1) continue;
          out.push_back({Rational(x), Rational(y), Rational(z)});
        }
  return out;
}

}  // namespace detail

/// E2 from the dual pencil of the 3-covering: the member through a small
/// rational point R, reduced at R. Returns the model, R, the member, and the
/// non-isogeny certificate against E1.
struct SearchedE2 {
  RationalModel model;
  Vec3<Rational> point;
  TernaryCubic member;
  NonIsogenyCertificate certificate;
};

inline SearchedE2 search_e2(const RationalModel& E1, const TernaryCubic& delta, const SurfaceOptions& opt) {
  Pencil pen = dual_pencil(delta, {opt.precision, opt.seed, 4});
  const TernaryCubic& A = pen.first();
  const TernaryCubic& B = pen.second();
  // every point lies on some member; among the first few usable ones keep
  // the E2 of smallest j-height, which keeps the later j-solve cheap
  const std::size_t kKeep = 24;
  std::optional<SearchedE2> best;
  std::size_t best_h = 0, usable = 0;
  for (const auto& R : detail::plane_points(opt.height_bound, 4000)) {
    Rational a = A(R), b = B(R);
    if (sgn(a) == 0 && sgn(b) == 0) continue;
    TernaryCubic G = primitive(A.scaled(b) - B.scaled(a));
    if (is_singular(G, {opt.precision, opt.seed, 4}).singular) continue;
    RationalModel W = reduced_model(nagell(G, R).model);
    auto cert = non_isogeny_certificate(E1, W, opt.prime_bound);
    if (!cert) continue;
    Rational j = W.j();
    std::size_t h = std::max(mpz_sizeinbase(j.get_num().get_mpz_t(), 2), mpz_sizeinbase(j.get_den().get_mpz_t(), 2));
    if (!best || h < best_h) {
      best = SearchedE2{W, R, G, *cert};
      best_h = h;
    }
    if (++usable >= kKeep) break;
  }
  if (!best) throw MathError(ErrorKind::NoRationalPoint, "no usable rational point within the height bound");
  return *best;
}

/// The product surface. G is taken from dual_pencil(F) by matching j(E2);
/// it is then moved to E2's Weierstrass cubic through a rational flex when
/// the two are isomorphic over Q, otherwise kept as a pencil model with
/// that flex as origin (flagged).
inline SurfacePair build_surface(const RationalModel& E1, const TernaryCubic& delta,
                                 const std::optional<RationalModel>& target, const SurfaceOptions& opt = {}) {
  const long prec = opt.precision;
  if (sgn(E1.discriminant()) == 0) throw MathError(ErrorKind::SingularInput, "E1 is singular");
  if (is_singular(delta, {prec, opt.seed, 4}).singular)
    throw MathError(ErrorKind::SingularInput, "the 3-covering cubic is singular");
  SurfacePair S;
  S.E1 = E1;
  S.F = E1.cubic();
  S.inv1 = E1.involution();
  RationalModel W2;
  if (target) {
    W2 = *target;
    if (sgn(W2.discriminant()) == 0) throw MathError(ErrorKind::SingularInput, "target E2 is singular");
    auto cert = non_isogeny_certificate(E1, W2, opt.prime_bound);
    if (!cert) throw MathError(ErrorKind::IsogenousPair, "no point-count mismatch below the prime bound");
    S.certificate = cert;
  } else {
    SearchedE2 s = search_e2(E1, delta, opt);
    W2 = s.model;
    S.rational_point = s.point;
    S.delta_member = s.member;
    S.certificate = s.certificate;
  }

  Pencil pf = dual_pencil(S.F, {prec, opt.seed, 4});
  // large-height targets need more digits for the fit
  std::vector<PencilSolution> sols;
  for (long p = prec; p <= 4 * prec && sols.empty(); p *= 2) {
    try {
      sols = j_solve_on_pencil(pf, W2.j(), {p, opt.seed});
    } catch (const PrecisionError&) {
    }
  }
  if (sols.empty()) throw MathError(ErrorKind::NoJMatch, "no rational member of the dual pencil has j(E2)");

  // u -> N^{-T} u preserves every member; its fixed flex is preferred
  Mat3<Rational> Nt = S.inv1.inverse_transpose();
  struct Candidate {
    PencilSolution sol;
    Vec3<Rational> flex;
    FlexReduction<Rational> red;
  };
  std::optional<Candidate> fallback;
  for (const auto& sol : sols) {
    TernaryCubic G = primitive(sol.member);
    auto flexes = detail::rational_flexes(G, prec, opt.seed);
    std::stable_partition(flexes.begin(), flexes.end(),
                          [&](const Vec3<Rational>& p) { return detail::same_point(Nt * p, p); });
    for (const auto& p : flexes) {
      auto red = reduce_at_flex(G, p);
      if (!fallback) fallback = Candidate{{sol.parameter, G}, p, red};
      auto iso = isomorphic_over_Q(red.model, W2);
      if (!iso) continue;
      // G o (T I) is proportional to W2.cubic()
      Mat3<Rational> M = red.transform * iso_matrix(*iso);
      if (!proportionality(G.act(M), W2.cubic())) throw MathError(ErrorKind::InternalError, "flex frame check failed");
      S.parameter = sol.parameter;
      S.pencil_member = G;
      S.equivalence = M;
      S.E2 = W2;
      S.G = W2.cubic();
      S.g_weierstrass = true;
      S.origin2 = {0, 1, 0};
      S.inv2 = W2.involution();
      // x . u with u = M u'
      S.incidence = BilinearForm{M};
      return S;
    }
  }
  // no Q-isomorphism through a rational flex
  if (fallback) {
    S.flags.push_back("NoLinearEquivalence: pencil model kept, origin at a rational flex");
    S.parameter = fallback->sol.parameter;
    S.pencil_member = fallback->sol.member;
    S.G = fallback->sol.member;
    S.E2 = fallback->red.model;
    S.origin2 = fallback->flex;
    const Mat3<Rational>& T = fallback->red.transform;
    S.inv2 = T * fallback->red.model.involution() * T.inverse();
    return S;
  }
  for (const auto& sol : sols) {
    TernaryCubic G = primitive(sol.member);
    if (auto M = linear_equivalence(G, W2.cubic(), {prec, opt.seed})) {
      // W2(M u) ~ G(u): Weierstrass coordinates u' = M u
      Mat3<Rational> Minv = M->inverse();
      S.parameter = sol.parameter;
      S.pencil_member = G;
      S.equivalence = Minv;
      S.E2 = W2;
      S.G = W2.cubic();
      S.g_weierstrass = true;
      S.inv2 = W2.involution();
      S.incidence = BilinearForm{Minv};
      return S;
    }
  }
  throw MathError(ErrorKind::NoLinearEquivalence, "no rational flex and no linear equivalence to E2");
}

/// A Weierstrass-only surface, with an arbitrary incidence form; used for
/// planted-form checks.
inline SurfacePair weierstrass_surface(const RationalModel& E1, const RationalModel& E2, const BilinearForm& K) {
  SurfacePair S;
  S.E1 = E1;
  S.E2 = E2;
  S.F = E1.cubic();
  S.G = E2.cubic();
  S.inv1 = E1.involution();
  S.inv2 = E2.involution();
  S.incidence = K;
  S.g_weierstrass = true;
  return S;
}

// ---------------------------------------------------------------------------
// Sampling and pushing

struct DSample {
  Vec3<BigComplex> x, u;
};

struct SampleOptions {
  long precision = kDefaultPrecision;
  std::uint64_t seed = 0;
};

namespace detail {

inline BigFloat form_residual(const ComplexCubic& G, const Vec3<BigComplex>& p) { return cubic_residual(G, p); }

inline BigFloat bilinear_residual(const BilinearForm& K, const Vec3<BigComplex>& x, const Vec3<BigComplex>& u) {
  long prec = x[0].prec();
  BigFloat n = BigFloat::zero(prec);
  for (const auto& e : K.row_major()) n = max(n, abs(BigFloat(e, prec)));
  return abs(K.eval(x, u)) / (n * vec_norm(x) * vec_norm(u));
}

/// Points of G on the line with coefficient vector l.
inline std::vector<Vec3<BigComplex>> line_meets_cubic(const ComplexCubic& G, const Vec3<BigComplex>& l, long prec) {
  std::array<Vec3<BigComplex>, 3> cand;
  std::array<BigFloat, 3> mag;
  for (int k = 0; k < 3; ++k) {
    Vec3<BigComplex> e{BigComplex(0L, prec), BigComplex(0L, prec), BigComplex(0L, prec)};
    e[static_cast<std::size_t>(k)] = BigComplex(1L, prec);
    cand[static_cast<std::size_t>(k)] = cross(l, e);
    mag[static_cast<std::size_t>(k)] = vec_norm(cand[static_cast<std::size_t>(k)]);
  }
  std::array<int, 3> ord{0, 1, 2};
  std::sort(ord.begin(), ord.end(), [&](int a, int b) { return mag[static_cast<std::size_t>(a)] > mag[static_cast<std::size_t>(b)]; });
  Vec3<BigComplex> a = cand[static_cast<std::size_t>(ord[0])], b = cand[static_cast<std::size_t>(ord[1])];
  Vec3<BigComplex> zero{BigComplex(0L, prec), BigComplex(0L, prec), BigComplex(0L, prec)};
  ComplexCubic R = G.act(Mat3<BigComplex>::from_columns(a, b, zero));
  // R(s, t, *) = sum c_i s^(3-i) t^i
  std::vector<BigComplex> c(4);
  for (int i = 0; i <= 3; ++i) c[static_cast<std::size_t>(i)] = R.coeff(3 - i, i, 0);
  std::vector<Vec3<BigComplex>> out;
  BigFloat cn = BigFloat::zero(prec);
  for (const auto& e : c) cn = max(cn, abs(e));
  if (abs(c[3]) <= threshold_for(prec) * cn) out.push_back(normalize_point(b));  // t = infinity
  std::vector<BigComplex> cc = c;
  while (cc.size() > 1 && abs(cc.back()) <= threshold_for(prec) * cn) cc.pop_back();
  if (cc.size() >= 2)
    for (const auto& t : complex_roots(UniPoly<BigComplex>(cc), prec))
      out.push_back(normalize_point({a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]}));
  return out;
}

}  // namespace detail

/// n points of {F = 0, G = 0, K = 0}: seeded rational x-coordinates on E1,
/// each lifted to F and paired with the points of G on the induced line.
/// K defaults to the surface's incidence form.
inline std::vector<DSample> sample_D(const SurfacePair& S, std::size_t n, const SampleOptions& opt = {},
                                     const std::optional<BilinearForm>& form = std::nullopt) {
  std::vector<DSample> out;
  if (n == 0) return out;
  const long prec = opt.precision;
  const long wp = prec + 64;
  const BilinearForm& K = form ? *form : S.incidence;
  ComplexCubic Fc = to_complex(S.F, wp), Gc = to_complex(S.G, wp);
  Mat3<BigComplex> Kc = to_complex(K.m, wp);
  std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + 0x5eed);
  std::uniform_int_distribution<long> num(-60, 60), den(1, 9);
  const BigFloat thr = threshold_for(prec);
  int guard = 0;
  while (out.size() < n) {
    if (++guard > static_cast<int>(50 * n + 100)) throw PrecisionError(ErrorKind::InsufficientPrecision, "sampling kept failing");
    Rational x0(num(rng), den(rng));
    x0.canonicalize();
    // F(x0, y, 1) as a polynomial in y
    std::vector<BigComplex> c(4, BigComplex(0L, wp));
    for (std::size_t k = 0; k < 10; ++k) {
      Exponent e = TernaryCubic::exponent(3, k);
      Rational m = S.F[k];
      for (int i = 0; i < e.x; ++i) m *= x0;
      c[static_cast<std::size_t>(e.y)] += BigComplex(m, wp);
    }
    while (c.size() > 1 && c.back().is_zero()) c.pop_back();
    if (c.size() < 2) continue;
    for (const auto& y : complex_roots(UniPoly<BigComplex>(c), wp)) {
      Vec3<BigComplex> x = normalize_point({BigComplex(x0, wp), y, BigComplex(1L, wp)});
      Vec3<BigComplex> l = Kc.transpose() * x;
      if (detail::vec_norm(l) <= thr) continue;
      for (const auto& u : detail::line_meets_cubic(Gc, l, wp)) {
        if (out.size() >= n) break;
        if (detail::form_residual(Fc, x) > thr || detail::form_residual(Gc, u) > thr ||
            detail::bilinear_residual(K, x, u) > thr)
          continue;
        out.push_back({x, u});
      }
      if (out.size() >= n) break;
    }
  }
  return out;
}

/// ([m] x [m]) of a sample, with each factor's group law about its origin;
/// default m = 3.
inline DSample push_3x3(const DSample& s, const SurfacePair& S, long m = 3) {
  long prec = s.x[0].prec();
  PointedCubic<BigComplex> A{to_complex(S.F, prec), to_complex(S.origin1, prec)};
  PointedCubic<BigComplex> B{to_complex(S.G, prec), to_complex(S.origin2, prec)};
  DSample r{A.mul(m, s.x), B.mul(m, s.u)};
  if (S.shift1) {
    PointedCubic<Rational> Ae{S.F, S.origin1};
    r.x = A.add(r.x, to_complex(Ae.mul(1 - m, *S.shift1), prec));
  }
  if (S.shift2) {
    PointedCubic<Rational> Be{S.G, S.origin2};
    r.u = B.add(r.u, to_complex(Be.mul(1 - m, *S.shift2), prec));
  }
  BigFloat thr = threshold_for(prec - 64);
  if (detail::form_residual(A.cubic, r.x) > thr || detail::form_residual(B.cubic, r.u) > thr)
    throw PrecisionError(ErrorKind::InsufficientPrecision, "pushed point left the curve");
  return r;
}

// ---------------------------------------------------------------------------
// Interpolation

struct CResult {
  BilinearForm form;              // canonical
  std::size_t samples = 0;
  BigFloat fit_residual;          // largest relative residual on the fitted images
  BigFloat kernel_gap;            // smallest accepted pivot of the fit
  bool involution_invariant = false;
  bool distinct_from_incidence = false;
  std::string origin_convention = "origins at the model base points";
};

/// The unique (up to scale) bilinear form vanishing at all image pairs,
/// reconstructed exactly.
inline CResult interpolate_C(const std::vector<DSample>& images, const SurfacePair& S, long prec) {
  if (images.size() < 8) throw MathError(ErrorKind::NullSpaceDimension, "fewer than 8 image pairs");
  long wp = images[0].x[0].prec();
  Matrix<BigComplex> A(images.size(), 9);
  for (std::size_t r = 0; r < images.size(); ++r) {
    Vec3<BigComplex> x = normalize_point(images[r].x), u = normalize_point(images[r].u);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) A(r, 3 * i + j) = x[i] * u[j];
  }
  NumericKernel ker = numeric_kernel(A, BigFloat::exp2(-prec / 2, wp));
  if (ker.basis.size() != 1)
    throw MathError(ErrorKind::NullSpaceDimension,
                    "solution space has dimension " + std::to_string(ker.basis.size()) + ", expected 1");
  std::vector<BigComplex> v = ker.basis[0];
  std::size_t big = 0;
  for (std::size_t k = 1; k < 9; ++k)
    if (abs(v[k]) > abs(v[big])) big = k;
  BigComplex inv = BigComplex(1L, wp) / v[big];
  std::vector<Rational> q(9);
  for (std::size_t k = 0; k < 9; ++k) {
    auto r = reconstruct_numeric(v[k] * inv, prec);
    if (!r) throw PrecisionError(ErrorKind::ReconstructionFailed, "bilinear coefficient did not reconstruct");
    q[k] = *r;
  }
  CResult out;
  out.form = BilinearForm::from_row_major(q).canonical();
  out.samples = images.size();
  out.kernel_gap = ker.smallest_pivot;
  out.fit_residual = BigFloat::zero(wp);
  for (const auto& s : images) out.fit_residual = max(out.fit_residual, detail::bilinear_residual(out.form, s.x, s.u));
  out.involution_invariant = out.form.transformed(S.inv1, S.inv2).proportional_to(out.form);
  out.distinct_from_incidence = !out.form.proportional_to(S.incidence);
  return out;
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyReport {
  std::size_t samples = 0;
  BigFloat max_residual;
  std::size_t exact_points = 0;  // rational image pairs checked exactly
  bool vacuous = true;
  bool passed = true;
};

namespace detail {

/// Exact check on rational points of D, when any are small enough to find.
inline std::size_t exact_rational_checks(const CResult& R, const SurfacePair& S, long bound) {
  auto P1 = point_search(S.F, bound);
  auto P2 = point_search(S.G, bound);
  PointedCubic<Rational> A{S.F, S.origin1}, B{S.G, S.origin2};
  std::size_t n = 0;
  for (const auto& p : P1)
    for (const auto& q : P2) {
      if (sgn(S.incidence(p, q)) != 0) continue;
      auto x = A.mul(3, p), u = B.mul(3, q);
      if (S.shift1) x = A.add(x, A.mul(-2, *S.shift1));
      if (S.shift2) u = B.add(u, B.mul(-2, *S.shift2));
      if (sgn(R.form(x, u)) != 0)
        throw MathError(ErrorKind::VerificationFailed, "form does not vanish at an exact rational image");
      ++n;
    }
  return n;
}

}  // namespace detail

/// Fresh samples (seed offset), pushed, evaluated on the exact form.
inline VerifyReport verify_C(const CResult& R, const SurfacePair& S, std::size_t n_fresh, const SampleOptions& opt = {},
                             long exact_bound = 12) {
  VerifyReport rep;
  rep.max_residual = BigFloat::zero(opt.precision);
  if (n_fresh == 0) return rep;
  rep.vacuous = false;
  SampleOptions fresh = opt;
  fresh.seed = opt.seed + 0x7e57;
  for (const auto& s : sample_D(S, n_fresh, fresh)) {
    DSample im = push_3x3(s, S);
    rep.max_residual = max(rep.max_residual, detail::bilinear_residual(R.form, im.x, im.u));
    ++rep.samples;
  }
  rep.passed = rep.max_residual < threshold_for(opt.precision);
  if (!rep.passed)
    throw MathError(ErrorKind::VerificationFailed, "residual " + rep.max_residual.to_string(6) + " at a fresh sample");
  if (exact_bound > 0) rep.exact_points = detail::exact_rational_checks(R, S, exact_bound);
  return rep;
}

// ---------------------------------------------------------------------------
// Pipeline

struct PipelineOptions {
  long precision = kDefaultPrecision;
  std::uint64_t seed = 0;
  long height_bound = 100;
  long prime_bound = 100;
  std::size_t samples = 24;
  std::size_t fresh = 20;
  std::optional<RationalModel> target;
  std::optional<BilinearForm> expected;  // compared up to scale; drives the origin retry set
  long retry_point_bound = 6;            // rational points used to translate origins
};

struct PipelineResult {
  SurfacePair surface;
  CResult curve;
  VerifyReport verification;
  std::optional<bool> matches_expected;
  std::vector<std::string> notes;
};

namespace detail {

inline std::string point_label(const Vec3<Rational>& p) {
  return "[" + p[0].get_str() + ":" + p[1].get_str() + ":" + p[2].get_str() + "]";
}

}  // namespace detail

/// Samples (returned unpushed) and fits, enlarging the sample set while the solution space is
/// too big.
inline std::pair<std::vector<DSample>, CResult> fit_images(const SurfacePair& S, const SampleOptions& so,
                                                           std::size_t n) {
  n = std::max<std::size_t>(n, 12);
  for (int round = 0; round < 3; ++round, n *= 2) {
    std::vector<DSample> samples = sample_D(S, n, so), images;
    for (const auto& s : samples) images.push_back(push_3x3(s, S));
    try {
      CResult c = interpolate_C(images, S, so.precision);
      return {samples, c};
    } catch (const MathError& e) {
      if (e.kind() != ErrorKind::NullSpaceDimension || round == 2) throw;
    }
  }
  throw MathError(ErrorKind::NullSpaceDimension, "sample cap reached");
}

inline PipelineResult pipeline(const RationalModel& E1, const TernaryCubic& delta, const PipelineOptions& opt = {}) {
  PipelineResult out;
  SurfaceOptions so{opt.precision, opt.seed, opt.height_bound, opt.prime_bound};
  out.surface = build_surface(E1, delta, opt.target, so);
  const SurfacePair S = out.surface;
  SampleOptions sm{opt.precision, opt.seed};
  out.curve = fit_images(S, sm, opt.samples).second;

  auto acceptable = [&](const CResult& c) {
    if (opt.expected) return c.form.proportional_to(*opt.expected);
    return c.involution_invariant && c.distinct_from_incidence;
  };
  if (!acceptable(out.curve)) {
    // bounded retry: the sign of the E2 coordinates, and origins
    // translated by small rational points
    std::vector<Vec3<Rational>> p1{S.origin1}, p2{S.origin2};
    for (const auto& p : point_search(S.F, opt.retry_point_bound))
      if (!detail::same_point(p, S.origin1)) p1.push_back(p);
    for (const auto& p : point_search(S.G, opt.retry_point_bound))
      if (!detail::same_point(p, S.origin2)) p2.push_back(p);
    bool found = false;
    for (int sign = 1; sign >= -1 && !found; sign -= 2)
      for (std::size_t i = 0; i < p1.size() && !found; ++i)
        for (std::size_t j = 0; j < p2.size() && !found; ++j) {
          if (sign == 1 && i == 0 && j == 0) continue;
          SurfacePair T = S;
          if (sign < 0) {
            // u = N2 u'
            T.incidence = BilinearForm{S.incidence.m * S.inv2};
            if (T.equivalence) T.equivalence = *T.equivalence * S.inv2;
          }
          if (i > 0) T.shift1 = p1[i];
          if (j > 0) T.shift2 = p2[j];
          CResult c;
          try {
            c = fit_images(T, sm, opt.samples).second;
          } catch (const Error&) {
            continue;
          }
          if (!acceptable(c)) continue;
          c.origin_convention = std::string(sign < 0 ? "E2 coordinates composed with (-1); " : "") +
                                (i == 0 && j == 0 ? std::string("origins at the model base points")
                                                  : "origins translated by " + detail::point_label(p1[i]) + " and " +
                                                        detail::point_label(p2[j]));
          out.curve = c;
          out.surface = T;
          found = true;
        }
    if (!found) out.notes.push_back("no convention in the retry set met the acceptance test; default kept");
  }
  if (opt.expected) out.matches_expected = out.curve.form.proportional_to(*opt.expected);
  if (!out.curve.involution_invariant) out.notes.push_back("form is not invariant under the (-1) maps");
  if (!out.curve.distinct_from_incidence) out.notes.push_back("form is proportional to the incidence form");
  out.verification = verify_C(out.curve, out.surface, opt.fresh, sm);
  return out;
}

}  // namespace vis3

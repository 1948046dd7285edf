#pragma once

// j-invariants of plane cubics and solving j = j0 along a pencil.

#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

#include "vis3/weierstrass.hpp"

namespace vis3 {

struct JValue {
  BigComplex value;
  std::optional<Rational> exact;  // certified reconstruction, when it exists
};

struct JOptions {
  long precision = kDefaultPrecision;
  std::uint64_t seed = 0;
};

/// j of a smooth plane cubic: move a flex to [0:1:0] with tangent w = 0,
/// read off the Weierstrass coefficients, j = c4^3 / disc.
inline JValue j_numeric(const TernaryCubic& G, const JOptions& opt = {}) {
  const long prec = opt.precision;
  const long wp = prec + 64;
  FlexScheme phi = flex_points(G, {wp, opt.seed, 8});
  ComplexCubic Gc = to_complex(G, wp);
  auto red = reduce_at_flex(Gc, phi.points[0], wp);
  BigComplex d = red.model.discriminant();
  BigComplex c4 = red.model.c4();
  BigFloat scale = max(abs(c4 * c4 * c4), abs(d));
  if (abs(d) <= threshold_for(prec) * scale) throw MathError(ErrorKind::SingularInput, "j of a singular cubic");
  JValue out{(c4 * c4 * c4 / d).with_prec(prec), std::nullopt};
  out.exact = reconstruct_numeric(out.value, prec);
  return out;
}

/// Exact j, raising precision until a certified reconstruction appears.
inline Rational j_exact(const TernaryCubic& G, const JOptions& opt = {}, int doublings = 2) {
  JOptions o = opt;
  for (int k = 0; k <= doublings; ++k) {
    JValue v = j_numeric(G, o);
    if (v.exact) return *v.exact;
    o.precision *= 2;
  }
  throw PrecisionError(ErrorKind::InsufficientPrecision, "j-invariant did not reconstruct");
}

struct PencilSolution {
  PencilParameter parameter;
  TernaryCubic member;
};

namespace detail {

/// Parameters (1 : n/d) ordered by max(|n|, d), reduced fractions only.
inline std::vector<PencilParameter> sample_parameters(std::size_t count) {
  std::vector<PencilParameter> out{{1, 0}};
  for (long h = 1; out.size() < count; ++h)
    for (long d = 1; d <= h; ++d)
      for (long n = -h; n <= h; ++n) {
        if (std::max(std::labs(n), d) != h || std::gcd(n, d) != 1) continue;
        out.push_back({Rational(1), Rational(n, d)});
      }
  out.resize(count);
  return out;
}

}  // namespace detail

/// Rational parameters (s:t) with j(sA + tB) = j0, excluding singular
/// members. j(s,t) is recovered numerically as N/D with binary forms N, D of
/// degree <= 12 from sampled members; the rational roots of N - j0 D are
/// reconstructed and each one is verified by recomputing j of its member
/// exactly.
inline std::vector<PencilSolution> j_solve_on_pencil(const Pencil& pen, const Rational& j0, const JOptions& opt = {}) {
  const long prec = opt.precision;
  const std::size_t kSamples = 32;
  std::vector<PencilParameter> params;
  std::vector<BigComplex> js;
  for (const auto& p : detail::sample_parameters(200)) {
    if (params.size() >= kSamples) break;
    TernaryCubic G = pen.member(p);
    if (is_singular(G, {prec, opt.seed, 4}).singular) continue;
    params.push_back(p);
    js.push_back(j_numeric(G, {prec + 64, opt.seed}).value);
  }
  if (params.size() < kSamples) throw MathError(ErrorKind::DegeneratePencil, "too few smooth members to sample");
  {
    bool constant = true;
    BigFloat tol = threshold_for(prec) * max(BigFloat(1L, prec), abs(js[0]));
    for (const auto& j : js)
      if (abs(j - js[0]) > tol) constant = false;
    if (constant) throw MathError(ErrorKind::DegenerateJ, "j is constant on the pencil");
  }
  // fit N - j D = 0 with coefficient vectors of degree `deg`
  auto fit = [&](int deg) {
    Matrix<BigComplex> M(params.size(), static_cast<std::size_t>(2 * (deg + 1)));
    for (std::size_t r = 0; r < params.size(); ++r) {
      BigComplex x = to_complex(params[r].t / params[r].s, prec + 64);
      BigComplex pw(1L, prec + 64);
      for (int i = 0; i <= deg; ++i) {
        M(r, static_cast<std::size_t>(i)) = pw;
        M(r, static_cast<std::size_t>(deg + 1 + i)) = -(js[r] * pw);
        pw *= x;
      }
    }
    return numeric_kernel(M, BigFloat::exp2(-prec / 2, prec + 64));
  };
  int deg = 12;
  NumericKernel ker = fit(deg);
  if (ker.basis.size() > 1) {
    deg = 12 - static_cast<int>(ker.basis.size()) + 1;
    ker = fit(deg);
  }
  if (ker.basis.size() != 1)
    throw PrecisionError(ErrorKind::ReconstructionFailed, "j(s,t) did not fit a unique rational function");
  const auto& v = ker.basis[0];
  // N - j0 D in x = t/s
  std::vector<BigComplex> c;
  BigComplex j0c = to_complex(j0, prec + 64);
  for (int i = 0; i <= deg; ++i) c.push_back(v[static_cast<std::size_t>(i)] - j0c * v[static_cast<std::size_t>(deg + 1 + i)]);
  BigFloat cn = BigFloat::zero(prec);
  for (const auto& e : c) cn = max(cn, abs(e));
  while (!c.empty() && abs(c.back()) <= threshold_for(prec) * cn) c.pop_back();

  std::vector<PencilParameter> cands;
  cands.push_back({0, 1});  // x = infinity is always checked directly
  if (c.size() >= 2) {
    for (const auto& r : complex_roots(UniPoly<BigComplex>(c), prec, {opt.seed, 0})) {
      auto q = reconstruct_numeric(r, prec);
      if (!q) continue;
      cands.push_back({1, *q});
    }
  }
  std::vector<PencilSolution> out;
  for (const auto& p0 : cands) {
    PencilParameter p = p0.canonical();
    bool dup = false;
    for (const auto& s : out) dup = dup || s.parameter == p;
    if (dup) continue;
    TernaryCubic G = pen.member(p);
    if (is_singular(G, {prec, opt.seed, 4}).singular) continue;
    JValue jv = j_numeric(G, {prec, opt.seed});
    if (jv.exact && *jv.exact == j0) out.push_back({p, G});
  }
  return out;
}

}  // namespace vis3

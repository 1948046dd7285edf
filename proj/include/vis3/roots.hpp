#pragma once

// Simultaneous polynomial root finding (Aberth-Ehrlich iteration) over
// arbitrary-precision complex numbers, with clustering of multiple roots.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "vis3/bigfloat.hpp"
#include "vis3/errors.hpp"
#include "vis3/unipoly.hpp"

namespace vis3 {

struct RootCluster {
  BigComplex value;
  int multiplicity = 1;
};

struct RootOptions {
  std::uint64_t seed = 0;
  long max_iterations = 0;  // 0: derived from precision and degree
};

namespace detail {

inline BigFloat coeff_norm(const UniPoly<BigComplex>& p) {
  BigFloat m = BigFloat::zero(p.lead().prec());
  for (const auto& c : p.coeffs()) m = max(m, abs(c));
  return m;
}

/// |p(z)| <= 2^(-prec/2) * ||p|| * max(1,|z|)^deg
inline bool root_residual_ok(const UniPoly<BigComplex>& p, const BigComplex& z, long prec) {
  BigFloat az = max(BigFloat(1L, prec), abs(z));
  BigFloat bound = threshold_for(prec) * coeff_norm(p);
  for (long k = 0; k < p.degree(); ++k) bound *= az;
  return abs(p(z)) <= bound;
}

}  // namespace detail

/// All deg(p) complex roots of p, each listed as often as its multiplicity
/// (approximations of a multiple root are replaced by their mean).
inline std::vector<BigComplex> complex_roots(const UniPoly<BigComplex>& p, long prec,
                                             const RootOptions& opt = {});

/// Roots grouped into clusters of coincident approximations.
inline std::vector<RootCluster> complex_root_clusters(const UniPoly<BigComplex>& p, long prec,
                                                      const RootOptions& opt = {}) {
  if (p.degree() < 1) throw MathError(ErrorKind::InternalError, "complex_roots needs degree >= 1");
  const long n = p.degree();
  const long wp = prec + 32;
  std::vector<BigComplex> c;
  for (const auto& e : p.coeffs()) c.push_back(e.with_prec(wp));
  BigComplex lead = c.back();
  for (auto& e : c) e /= lead;
  UniPoly<BigComplex> q(c);
  UniPoly<BigComplex> dq = q.derivative();

  // Start on a circle whose radius is the geometric mean of the root moduli,
  // with a seeded angular offset.
  std::vector<BigComplex> z(static_cast<std::size_t>(n));
  {
    long low = 0;
    while (c[static_cast<std::size_t>(low)].is_zero()) ++low;
    BigFloat a0 = abs(c[static_cast<std::size_t>(low)]);
    double lr = std::log2(std::max(a0.to_double(), 1e-300)) / static_cast<double>(n - low);
    if (!(lr > -900 && lr < 900)) lr = 0;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double offset = u(rng);
    BigFloat r = BigFloat::from_double(std::exp2(lr), wp);
    for (long k = 0; k < n; ++k) {
      double frac = (static_cast<double>(k) + offset) / static_cast<double>(n);
      BigFloat ang = BigFloat::pi(wp) * BigFloat::from_double(2.0 * frac, wp);
      // slight radial perturbation breaks symmetric stalls
      BigFloat rr = r * BigFloat::from_double(1.0 + 0.1 * u(rng), wp);
      z[static_cast<std::size_t>(k)] = BigComplex(rr * cos(ang), rr * sin(ang));
    }
  }

  long cap = opt.max_iterations > 0 ? opt.max_iterations : 40 * prec + 200;
  BigFloat tight = BigFloat::exp2(-(prec + 8), wp);
  long quiet = 0;
  bool converged = false;
  for (long it = 0; it < cap; ++it) {
    BigFloat worst = BigFloat::zero(wp);
    for (long k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      BigComplex pv = q(zk);
      if (pv.is_zero()) continue;
      BigComplex dv = dq(zk);
      BigComplex s = BigComplex::zero(wp);
      for (long j = 0; j < n; ++j) {
        if (j == k) continue;
        BigComplex d = zk - z[static_cast<std::size_t>(j)];
        if (!d.is_zero()) s += BigComplex(1L, wp) / d;
      }
      BigComplex ratio = dv.is_zero() ? BigComplex::zero(wp) : pv / dv;
      BigComplex w = dv.is_zero() ? BigComplex(BigFloat::exp2(-prec / 4, wp)) : ratio / (BigComplex(1L, wp) - ratio * s);
      zk -= w;
      BigFloat rel = abs(w) / max(BigFloat(1L, wp), abs(zk));
      worst = max(worst, rel);
    }
    if (worst <= tight) {
      if (++quiet >= 2) {
        converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
    // Multiple roots converge only linearly; accept once every residual
    // meets the certification bound and a few extra sweeps have run.
    if (it > 8 && (it % 16) == 0) {
      bool all_ok = true;
      for (const auto& zk : z)
        if (!detail::root_residual_ok(q, zk, prec + 32)) {
          all_ok = false;
          break;
        }
      if (all_ok) {
        converged = true;
        break;
      }
    }
  }
  for (const auto& zk : z)
    if (!detail::root_residual_ok(q, zk, prec))
      throw PrecisionError(ErrorKind::NonConvergence,
                           converged ? "root residual above threshold" : "root iteration cap reached");

  // Cluster approximations closer than 2^(-prec/(2n)) relative.
  BigFloat ctol = BigFloat::exp2(-prec / (2 * n) - 1, wp);
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  std::vector<RootCluster> out;
  for (long k = 0; k < n; ++k) {
    if (owner[static_cast<std::size_t>(k)] >= 0) continue;
    std::vector<long> members{k};
    owner[static_cast<std::size_t>(k)] = static_cast<int>(out.size());
    for (long j = k + 1; j < n; ++j) {
      if (owner[static_cast<std::size_t>(j)] >= 0) continue;
      BigFloat scale = max(BigFloat(1L, wp), abs(z[static_cast<std::size_t>(k)]));
      if (abs(z[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(k)]) <= ctol * scale) {
        owner[static_cast<std::size_t>(j)] = static_cast<int>(out.size());
        members.push_back(j);
      }
    }
    BigComplex mean = BigComplex::zero(wp);
    for (long m : members) mean += z[static_cast<std::size_t>(m)];
    mean /= BigComplex(static_cast<long>(members.size()), wp);
    out.push_back({mean.with_prec(prec), static_cast<int>(members.size())});
  }
  return out;
}

inline std::vector<BigComplex> complex_roots(const UniPoly<BigComplex>& p, long prec, const RootOptions& opt) {
  std::vector<BigComplex> out;
  for (const auto& c : complex_root_clusters(p, prec, opt))
    for (int k = 0; k < c.multiplicity; ++k) out.push_back(c.value);
  return out;
}

/// Newton refinement of a simple root.
inline BigComplex newton_polish(const UniPoly<BigComplex>& p, BigComplex z, int steps = 4) {
  UniPoly<BigComplex> dp = p.derivative();
  for (int i = 0; i < steps; ++i) {
    BigComplex d = dp(z);
    if (d.is_zero()) break;
    z -= p(z) / d;
  }
  return z;
}

/// Roots of a rational polynomial with exact multiplicities: the square-free
/// decomposition is computed exactly and each factor's simple roots are found
/// numerically and Newton-polished.
inline std::vector<RootCluster> rational_poly_roots(const UniPoly<Rational>& p, long prec,
                                                    const RootOptions& opt = {}) {
  std::vector<RootCluster> out;
  auto parts = squarefree_decomposition(p);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() < 1) continue;
    UniPoly<BigComplex> f = to_complex(parts[i], prec + 32);
    RootOptions o = opt;
    o.seed = opt.seed + i;
    for (const auto& c : complex_root_clusters(f, prec + 16, o)) {
      BigComplex z = newton_polish(f, c.value.with_prec(prec + 32));
      for (int k = 0; k < c.multiplicity; ++k)
        out.push_back({z.with_prec(prec), static_cast<int>(i + 1)});
    }
  }
  return out;
}

/// Projective roots of a rational binary form: pairs ([x:1] or [1:0]) with
/// multiplicities.
struct ProjectiveRoot {
  BigComplex x, y;
  int multiplicity = 1;
};

inline std::vector<ProjectiveRoot> binary_form_roots(const BinaryForm<Rational>& f, long prec,
                                                     const RootOptions& opt = {}) {
  std::vector<ProjectiveRoot> out;
  int inf = f.infinity_multiplicity();
  if (inf > f.degree) throw MathError(ErrorKind::InternalError, "roots of the zero binary form");
  if (inf > 0) out.push_back({BigComplex(1L, prec), BigComplex::zero(prec), inf});
  UniPoly<Rational> p = f.dehomogenize();
  if (p.degree() >= 1)
    for (auto& r : rational_poly_roots(p, prec, opt)) out.push_back({r.value, BigComplex(1L, prec), r.multiplicity});
  return out;
}

}  // namespace vis3

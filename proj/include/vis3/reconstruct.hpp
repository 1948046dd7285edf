#pragma once

// Rational reconstruction: recover p/q from a floating approximation by
// walking the continued-fraction convergents of its exact binary value.
//
// If |v - p/q| <= tol and tol < 1/(2 B^2), then p/q (q <= B) is a convergent
// of v (Legendre) and no second fraction with denominator <= B fits the
// ball, so a hit among the convergents is certified unique.

#include <optional>

#include "vis3/bigfloat.hpp"
#include "vis3/errors.hpp"
#include "vis3/rational.hpp"

namespace vis3 {

inline std::optional<Rational> rational_reconstruct(const BigFloat& v, const Integer& bound, const BigFloat& tol) {
  if (bound < 1) throw MathError(ErrorKind::InternalError, "denominator bound must be positive");
  // tol < 1/(2 B^2)
  Rational tq = tol.to_rational();
  Rational limit(Integer(1), 2 * bound * bound);
  if (tq >= limit)
    throw PrecisionError(ErrorKind::InsufficientPrecision, "error ball too wide for the denominator bound");

  const Rational x = v.to_rational();
  std::optional<Rational> found;
  // convergents h_k/k_k
  Integer h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  Integer num = x.get_num(), den = x.get_den();
  while (den != 0) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Integer h = a * h_prev + h_prev2;
    Integer k = a * k_prev + k_prev2;
    if (k > bound) break;
    Rational cand(h, k);
    cand.canonicalize();
    if (abs(x - cand) <= tq) {
      if (found && *found != cand)
        throw MathError(ErrorKind::AmbiguousReconstruction, "two candidates fit the error ball");
      found = cand;
    }
    Integer r = num - a * den;
    num = den;
    den = r;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return found;
}

/// Tolerance derived from the value's own precision: an exactly embedded
/// rational is off by at most 2^-prec relative; 16 guard bits absorb
/// rounding.
inline std::optional<Rational> rational_reconstruct(const BigFloat& v, const Integer& bound) {
  long p = v.prec();
  BigFloat tol = BigFloat::exp2(-(p - 16), p) * max(BigFloat(1L, p), abs(v));
  return rational_reconstruct(v, bound, tol);
}

/// Complex input: the imaginary part must lie inside the same error ball.
inline std::optional<Rational> rational_reconstruct(const BigComplex& v, const Integer& bound, const BigFloat& tol) {
  if (abs(v.im()) > tol) return std::nullopt;
  return rational_reconstruct(v.re(), bound, tol);
}

/// Reconstruction for values carrying numeric error of order
/// 2^(-prec/2) relative: uses that tolerance and the largest certifiable
/// denominator bound.
inline std::optional<Rational> reconstruct_numeric(const BigComplex& v, long prec) {
  BigFloat mag = max(BigFloat(1L, prec), abs(v));
  BigFloat tol = threshold_for(prec) * mag;
  // B = floor(2^(-1) / sqrt(tol)) keeps tol < 1/(2 B^2) with margin.
  long e = tol.exponent();
  long bexp = std::max(1L, (-e) / 2 - 2);
  Integer bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 2, static_cast<unsigned long>(bexp));
  return rational_reconstruct(v, bound, tol);
}

}  // namespace vis3

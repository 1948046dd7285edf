#pragma once

#include <vector>

#include "vis3/forms.hpp"
#include "vis3/linalg.hpp"
#include "vis3/unipoly.hpp"

namespace vis3 {

namespace detail {

/// Sylvester determinant for coefficient lists of nominal degrees m, n
/// (a[i] multiplies z^i; the leading entries may vanish).
inline Rational sylvester_det(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  const std::size_t m = a.size() - 1, n = b.size() - 1;
  const std::size_t N = m + n;
  if (N == 0) return Rational(1);
  Matrix<Rational> S(N, N);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) S(r, r + i) = a[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) S(n + r, r + i) = b[n - i];
  return determinant(std::move(S));
}

}  // namespace detail

/// Res(p, q) as the Sylvester determinant; exact.
inline Rational resultant(const UniPoly<Rational>& p, const UniPoly<Rational>& q) {
  if (p.is_zero() || q.is_zero()) return Rational(0);
  return detail::sylvester_det(p.coeffs(), q.coeffs());
}

/// Eliminates z from two ternary forms: the resultant with respect to z,
/// returned as a binary form in (x, y). With z-degrees m1, m2 and total
/// degrees n1, n2 the result has degree m2*n1 + m1*n2 - m1*m2.
inline BinaryForm<Rational> resultant_z(const TernaryForm<Rational>& f, const TernaryForm<Rational>& g) {
  auto zdeg = [](const TernaryForm<Rational>& h) {
    int best = -1;
    for (std::size_t k = 0; k < h.size(); ++k)
      if (sgn(h[k]) != 0) best = std::max(best, TernaryForm<Rational>::exponent(h.degree(), k).z);
    return best;
  };
  const int m1 = zdeg(f), m2 = zdeg(g);
  if (m1 < 0 || m2 < 0) throw MathError(ErrorKind::InternalError, "resultant of a zero form");
  const int n1 = f.degree(), n2 = g.degree();
  const int D = m2 * n1 + m1 * n2 - m1 * m2;
  // coefficient of z^i evaluated at (x, 1)
  auto zcoeffs = [](const TernaryForm<Rational>& h, int m, const Rational& x) {
    std::vector<Rational> c(static_cast<std::size_t>(m + 1), Rational(0));
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (sgn(h[k]) == 0) continue;
      Exponent e = TernaryForm<Rational>::exponent(h.degree(), k);
      Rational term = h[k];
      for (int t = 0; t < e.x; ++t) term *= x;
      c[static_cast<std::size_t>(e.z)] += term;
    }
    return c;
  };
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= D; ++k) {
    Rational x(k - D / 2);
    xs.push_back(x);
    ys.push_back(detail::sylvester_det(zcoeffs(f, m1, x), zcoeffs(g, m2, x)));
  }
  UniPoly<Rational> r = interpolate(xs, ys);
  std::vector<Rational> c(static_cast<std::size_t>(D + 1), Rational(0));
  for (std::size_t i = 0; i < r.coeffs().size(); ++i) c[i] = r.coeffs()[i];
  return BinaryForm<Rational>(D, std::move(c));
}

}  // namespace vis3

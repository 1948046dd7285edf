#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "vis3/bigfloat.hpp"
#include "vis3/errors.hpp"
#include "vis3/rational.hpp"

namespace vis3 {

/// Dense univariate polynomial, c[i] is the coefficient of x^i. Trailing
/// exact zeros are trimmed, so the zero polynomial has no coefficients.
template <class T>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<T> c) : c_(std::move(c)) { trim(); }

  static UniPoly monomial(const T& coef, std::size_t k) {
    std::vector<T> c(k + 1, T(0));
    c[k] = coef;
    return UniPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const T& lead() const { return c_.back(); }

  T operator()(const T& x) const {
    if (c_.empty()) return T(0);
    T r = c_.back();
    for (std::size_t k = c_.size() - 1; k-- > 0;) r = r * x + c_[k];
    return r;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<int>(i));
    return UniPoly(std::move(d));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return UniPoly(std::move(r));
  }
  UniPoly scaled(const T& s) const {
    std::vector<T> r(c_);
    for (auto& e : r) e = e * s;
    return UniPoly(std::move(r));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && is_zero_scalar(c_.back())) c_.pop_back();
  }
  static bool is_zero_scalar(const T& v) { return vis3::is_zero(v); }

  std::vector<T> c_;
};

/// Quotient and remainder over the rationals.
inline std::pair<UniPoly<Rational>, UniPoly<Rational>> divmod(const UniPoly<Rational>& a,
                                                               const UniPoly<Rational>& b) {
  if (b.is_zero()) throw MathError(ErrorKind::InternalError, "polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  long db = b.degree();
  if (a.degree() < db) return {UniPoly<Rational>(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  for (long k = a.degree() - db; k >= 0; --k) {
    Rational f = r[static_cast<std::size_t>(k + db)] / b.lead();
    q[static_cast<std::size_t>(k)] = f;
    if (sgn(f) == 0) continue;
    for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {UniPoly<Rational>(std::move(q)), UniPoly<Rational>(std::move(r))};
}

inline UniPoly<Rational> monic(const UniPoly<Rational>& p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / p.lead();
  return p.scaled(inv);
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
inline UniPoly<Rational> gcd(UniPoly<Rational> a, UniPoly<Rational> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Yun's square-free decomposition: p = lead * prod f_i^i; entry i-1 holds
/// f_i (monic, possibly constant 1).
inline std::vector<UniPoly<Rational>> squarefree_decomposition(const UniPoly<Rational>& p) {
  std::vector<UniPoly<Rational>> out;
  if (p.degree() <= 0) return out;
  UniPoly<Rational> f = monic(p);
  UniPoly<Rational> df = f.derivative();
  UniPoly<Rational> a = gcd(f, df);
  UniPoly<Rational> b = divmod(f, a).first;
  UniPoly<Rational> c = divmod(df, a).first;
  UniPoly<Rational> d = c - b.derivative();
  while (b.degree() > 0) {
    UniPoly<Rational> g = gcd(b, d);
    out.push_back(g);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
  }
  return out;
}

/// Exact Newton interpolation through (xs[i], ys[i]) with distinct xs.
inline UniPoly<Rational> interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> dd(ys);
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
      if (i == k) break;
    }
  UniPoly<Rational> r({dd[n - 1]});
  for (std::size_t k = n - 1; k-- > 0;) {
    Rational negx = -xs[k];
    r = r * UniPoly<Rational>({negx, Rational(1)}) + UniPoly<Rational>({dd[k]});
  }
  return r;
}

inline UniPoly<BigComplex> to_complex(const UniPoly<Rational>& p, long prec) {
  std::vector<BigComplex> c;
  c.reserve(p.coeffs().size());
  for (const auto& q : p.coeffs()) c.emplace_back(q, prec);
  return UniPoly<BigComplex>(std::move(c));
}

/// Homogeneous binary form of fixed degree d: c[i] multiplies x^i y^(d-i).
/// The nominal degree is kept even when top coefficients vanish, so roots at
/// [1:0] are represented.
template <class T>
struct BinaryForm {
  int degree = 0;
  std::vector<T> c;

  BinaryForm() = default;
  BinaryForm(int d, std::vector<T> coeffs) : degree(d), c(std::move(coeffs)) { c.resize(static_cast<std::size_t>(d + 1), T(0)); }

  /// The polynomial in x obtained by setting y = 1.
  UniPoly<T> dehomogenize() const { return UniPoly<T>(c); }
  /// Multiplicity of the root [1:0].
  int infinity_multiplicity() const {
    int m = 0;
    for (int i = degree; i >= 0 && is_zero(c[static_cast<std::size_t>(i)]); --i) ++m;
    return m;
  }
  T operator()(const T& x, const T& y) const {
    T r = T(0);
    for (int i = degree; i >= 0; --i) {
      T term = c[static_cast<std::size_t>(i)];
      for (int k = 0; k < i; ++k) term = term * x;
      for (int k = 0; k < degree - i; ++k) term = term * y;
      r = r + term;
    }
    return r;
  }
  bool is_zero_form() const {
    for (const auto& e : c)
      if (!is_zero(e)) return false;
    return true;
  }
};

}  // namespace vis3

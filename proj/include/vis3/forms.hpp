#pragma once

// Homogeneous forms in three variables (x, y, z) and bilinear forms on
// P^2 x P^2.
//
// Monomials of degree d are stored in descending lexicographic order of the
// exponent triple; for cubics that is
//   x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vis3/bigfloat.hpp"
#include "vis3/errors.hpp"
#include "vis3/linalg.hpp"
#include "vis3/rational.hpp"

namespace vis3 {

inline constexpr const char* kCubicMonomialOrder = "x^3,x^2y,x^2z,xy^2,xyz,xz^2,y^3,y^2z,yz^2,z^3";

struct Exponent {
  int x, y, z;
};

template <class T>
class TernaryForm {
 public:
  TernaryForm() : TernaryForm(0) {}
  explicit TernaryForm(int degree) : d_(degree), c_(size_for(degree), T(0)) {}
  TernaryForm(int degree, std::vector<T> coeffs) : d_(degree), c_(std::move(coeffs)) {
    if (c_.size() != size_for(degree))
      throw MathError(ErrorKind::InternalError, "wrong coefficient count for a ternary form");
  }

  static std::size_t size_for(int d) { return static_cast<std::size_t>((d + 1) * (d + 2) / 2); }
  static std::size_t index(int d, int i, int j) {
    return static_cast<std::size_t>((d - i) * (d - i + 1) / 2 + (d - i - j));
  }
  static Exponent exponent(int d, std::size_t idx) {
    for (int i = d; i >= 0; --i)
      for (int j = d - i; j >= 0; --j)
        if (index(d, i, j) == idx) return {i, j, d - i - j};
    throw MathError(ErrorKind::InternalError, "monomial index out of range");
  }

  static TernaryForm linear(const T& a, const T& b, const T& c) { return TernaryForm(1, {a, b, c}); }
  static TernaryForm constant(const T& a) { return TernaryForm(0, {a}); }

  int degree() const { return d_; }
  std::size_t size() const { return c_.size(); }
  const std::vector<T>& coeffs() const { return c_; }
  std::vector<T>& coeffs() { return c_; }
  const T& operator[](std::size_t k) const { return c_[k]; }
  T& operator[](std::size_t k) { return c_[k]; }
  const T& coeff(int i, int j, int k) const {
    check_exp(i, j, k);
    return c_[index(d_, i, j)];
  }
  T& coeff(int i, int j, int k) {
    check_exp(i, j, k);
    return c_[index(d_, i, j)];
  }

  bool is_zero() const {
    for (const auto& e : c_)
      if (!vis3::is_zero(e)) return false;
    return true;
  }

  T operator()(const Vec3<T>& v) const { return eval(v[0], v[1], v[2]); }
  T eval(const T& x, const T& y, const T& z) const {
    std::vector<T> px(d_ + 1, T(1)), py(d_ + 1, T(1)), pz(d_ + 1, T(1));
    for (int k = 1; k <= d_; ++k) {
      px[k] = px[k - 1] * x;
      py[k] = py[k - 1] * y;
      pz[k] = pz[k - 1] * z;
    }
    T s = T(0);
    for (std::size_t idx = 0; idx < c_.size(); ++idx) {
      if (vis3::is_zero(c_[idx])) continue;
      Exponent e = exponent(d_, idx);
      s += c_[idx] * px[e.x] * py[e.y] * pz[e.z];
    }
    return s;
  }

  /// Partial derivative with respect to variable 0 (x), 1 (y) or 2 (z).
  TernaryForm partial(int var) const {
    if (d_ == 0) return TernaryForm(0);
    TernaryForm r(d_ - 1);
    for (std::size_t idx = 0; idx < c_.size(); ++idx) {
      Exponent e = exponent(d_, idx);
      int ex[3] = {e.x, e.y, e.z};
      if (ex[var] == 0) continue;
      int mult = ex[var];
      ex[var] -= 1;
      r.coeff(ex[0], ex[1], ex[2]) += c_[idx] * T(mult);
    }
    return r;
  }

  Vec3<T> gradient(const Vec3<T>& v) const { return {partial(0)(v), partial(1)(v), partial(2)(v)}; }

  friend TernaryForm operator+(const TernaryForm& a, const TernaryForm& b) {
    a.check_same(b);
    TernaryForm r(a);
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += b.c_[k];
    return r;
  }
  friend TernaryForm operator-(const TernaryForm& a, const TernaryForm& b) {
    a.check_same(b);
    TernaryForm r(a);
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] -= b.c_[k];
    return r;
  }
  TernaryForm scaled(const T& s) const {
    TernaryForm r(*this);
    for (auto& e : r.c_) e = e * s;
    return r;
  }
  friend TernaryForm operator*(const TernaryForm& a, const TernaryForm& b) {
    TernaryForm r(a.d_ + b.d_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (vis3::is_zero(a.c_[i])) continue;
      Exponent ea = exponent(a.d_, i);
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (vis3::is_zero(b.c_[j])) continue;
        Exponent eb = exponent(b.d_, j);
        r.coeff(ea.x + eb.x, ea.y + eb.y, ea.z + eb.z) += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  /// Right action F o M: (F o M)(v) = F(M v) for column vectors v.
  TernaryForm act(const Mat3<T>& M) const {
    std::array<TernaryForm, 3> L = {linear(M(0, 0), M(0, 1), M(0, 2)), linear(M(1, 0), M(1, 1), M(1, 2)),
                                    linear(M(2, 0), M(2, 1), M(2, 2))};
    std::array<std::vector<TernaryForm>, 3> pw;
    for (int v = 0; v < 3; ++v) {
      pw[v].push_back(constant(T(1)));
      for (int k = 1; k <= d_; ++k) pw[v].push_back(pw[v].back() * L[v]);
    }
    TernaryForm r(d_);
    for (std::size_t idx = 0; idx < c_.size(); ++idx) {
      if (vis3::is_zero(c_[idx])) continue;
      Exponent e = exponent(d_, idx);
      TernaryForm term = pw[0][e.x] * pw[1][e.y] * pw[2][e.z];
      r = r + term.scaled(c_[idx]);
    }
    return r;
  }

  friend bool operator==(const TernaryForm& a, const TernaryForm& b) { return a.d_ == b.d_ && a.c_ == b.c_; }

 private:
  void check_exp(int i, int j, int k) const {
    if (i < 0 || j < 0 || k < 0 || i + j + k != d_)
      throw MathError(ErrorKind::InternalError, "exponent does not match form degree");
  }
  void check_same(const TernaryForm& b) const {
    if (d_ != b.d_) throw MathError(ErrorKind::InternalError, "adding forms of different degrees");
  }

  int d_;
  std::vector<T> c_;
};

using TernaryCubic = TernaryForm<Rational>;
using ComplexCubic = TernaryForm<BigComplex>;

inline TernaryCubic make_cubic(const std::array<Rational, 10>& c) {
  return TernaryCubic(3, std::vector<Rational>(c.begin(), c.end()));
}

inline TernaryCubic make_cubic(std::initializer_list<long> c) {
  if (c.size() != 10) throw MathError(ErrorKind::InternalError, "a cubic has 10 coefficients");
  std::vector<Rational> v;
  for (long e : c) v.emplace_back(e);
  return TernaryCubic(3, std::move(v));
}

/// F o M, the substitution of a linear change of variables.
template <class T>
TernaryForm<T> act_cubic(const TernaryForm<T>& F, const Mat3<T>& M) {
  return F.act(M);
}

inline ComplexCubic to_complex(const TernaryForm<Rational>& F, long prec) {
  std::vector<BigComplex> c;
  for (const auto& q : F.coeffs()) c.emplace_back(q, prec);
  return ComplexCubic(F.degree(), std::move(c));
}

/// Primitive integer representative with positive first nonzero coefficient.
inline TernaryCubic primitive(const TernaryCubic& F) {
  std::vector<Rational> v = F.coeffs();
  make_primitive(v);
  return TernaryCubic(F.degree(), std::move(v));
}

/// c with A = c * B, if A and B are proportional (B nonzero).
inline std::optional<Rational> proportionality(const TernaryForm<Rational>& A, const TernaryForm<Rational>& B) {
  if (A.degree() != B.degree() || B.is_zero()) return std::nullopt;
  std::optional<Rational> c;
  for (std::size_t k = 0; k < A.size(); ++k) {
    if (is_zero(B[k])) {
      if (!is_zero(A[k])) return std::nullopt;
      continue;
    }
    Rational r = A[k] / B[k];
    if (c && *c != r) return std::nullopt;
    c = r;
  }
  return c;
}

/// Max coefficient modulus.
inline BigFloat coeff_norm(const ComplexCubic& F) {
  BigFloat m = BigFloat::zero(F[0].prec());
  for (const auto& c : F.coeffs()) m = max(m, abs(c));
  return m;
}

/// Scales a projective point so its largest-modulus coordinate is 1.
inline Vec3<BigComplex> normalize_point(const Vec3<BigComplex>& p) {
  int best = 0;
  BigFloat bm = norm(p[0]);
  for (int i = 1; i < 3; ++i) {
    BigFloat m = norm(p[i]);
    if (m > bm) {
      bm = m;
      best = i;
    }
  }
  if (bm.is_zero()) throw MathError(ErrorKind::InternalError, "zero vector is not a projective point");
  BigComplex inv = BigComplex(1L, p[best].prec()) / p[best];
  Vec3<BigComplex> r = {p[0] * inv, p[1] * inv, p[2] * inv};
  r[best] = BigComplex(1L, p[best].prec());
  return r;
}

/// Distance between two projective points after normalization (scale
/// invariant): min over unit phases of the coordinate difference.
inline BigFloat projective_distance(const Vec3<BigComplex>& a, const Vec3<BigComplex>& b) {
  // |a x b| / (|a| |b|) is the sine of the angle between the lines.
  auto c = cross(a, b);
  BigFloat num = sqrt(norm(c[0]) + norm(c[1]) + norm(c[2]));
  BigFloat na = sqrt(norm(a[0]) + norm(a[1]) + norm(a[2]));
  BigFloat nb = sqrt(norm(b[0]) + norm(b[1]) + norm(b[2]));
  return num / (na * nb);
}

/// Bilinear form on P^2 x P^2: value sum_ij m(i,j) X_i U_j with
/// X = (x,y,z), U = (u,v,w).
struct BilinearForm {
  Mat3<Rational> m = Mat3<Rational>::zero();

  static BilinearForm incidence() { return BilinearForm{Mat3<Rational>::identity()}; }

  Rational operator()(const Vec3<Rational>& X, const Vec3<Rational>& U) const { return dot(X, m * U); }
  BigComplex eval(const Vec3<BigComplex>& X, const Vec3<BigComplex>& U) const {
    long prec = X[0].prec();
    return dot(X, to_complex(m, prec) * U);
  }
  bool is_zero() const {
    for (const auto& row : m.m)
      for (const auto& e : row)
        if (sgn(e) != 0) return false;
    return true;
  }
  std::vector<Rational> row_major() const {
    std::vector<Rational> v;
    for (const auto& row : m.m)
      for (const auto& e : row) v.push_back(e);
    return v;
  }
  static BilinearForm from_row_major(const std::vector<Rational>& v) {
    BilinearForm b;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) b.m(i, j) = v[static_cast<std::size_t>(3 * i + j)];
    return b;
  }
  /// Integer, content-free, first nonzero entry (row-major) positive.
  BilinearForm canonical() const {
    auto v = row_major();
    make_primitive(v);
    return from_row_major(v);
  }
  bool proportional_to(const BilinearForm& o) const {
    if (is_zero() || o.is_zero()) return false;
    return canonical().m == o.canonical().m;
  }
  /// Form after substituting X -> A X, U -> B U: A^T m B.
  BilinearForm transformed(const Mat3<Rational>& A, const Mat3<Rational>& B) const {
    return BilinearForm{A.transpose() * m * B};
  }
  friend bool operator==(const BilinearForm& a, const BilinearForm& b) { return a.m == b.m; }

  std::string to_string() const {
    static const char* xs[3] = {"x", "y", "z"};
    static const char* us[3] = {"u", "v", "w"};
    std::string s;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Rational& c = m(i, j);
        if (sgn(c) == 0) continue;
        std::string term = (c == 1 ? "" : (c == -1 ? "-" : c.get_str())) + xs[i] + us[j];
        if (!s.empty() && term[0] != '-') s += " + ";
        else if (!s.empty()) s += " ";
        s += term;
      }
    return s.empty() ? "0" : s;
  }
};

}  // namespace vis3

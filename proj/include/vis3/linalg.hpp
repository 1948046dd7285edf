#pragma once

// Dense linear algebra: a small fixed 3x3 type used for projective
// transformations, and general matrices with exact (rational) and numeric
// (complex) null-space routines.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "vis3/bigfloat.hpp"
#include "vis3/errors.hpp"
#include "vis3/rational.hpp"

namespace vis3 {

template <class T>
using Vec3 = std::array<T, 3>;

template <class T>
struct Mat3 {
  std::array<std::array<T, 3>, 3> m{};

  static Mat3 identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = T(i == j ? 1 : 0);
    return r;
  }
  static Mat3 diag(const T& a, const T& b, const T& c) {
    Mat3 r = zero();
    r.m[0][0] = a;
    r.m[1][1] = b;
    r.m[2][2] = c;
    return r;
  }
  static Mat3 zero() {
    Mat3 r;
    for (auto& row : r.m)
      for (auto& e : row) e = T(0);
    return r;
  }
  /// Matrix with the given columns.
  static Mat3 from_columns(const Vec3<T>& c0, const Vec3<T>& c1, const Vec3<T>& c2) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
      r.m[i][0] = c0[i];
      r.m[i][1] = c1[i];
      r.m[i][2] = c2[i];
    }
    return r;
  }

  T& operator()(int i, int j) { return m[i][j]; }
  const T& operator()(int i, int j) const { return m[i][j]; }

  Vec3<T> column(int j) const { return {m[0][j], m[1][j], m[2][j]}; }

  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        T s = a.m[i][0] * b.m[0][j];
        s += a.m[i][1] * b.m[1][j];
        s += a.m[i][2] * b.m[2][j];
        r.m[i][j] = s;
      }
    return r;
  }
  friend Vec3<T> operator*(const Mat3& a, const Vec3<T>& v) {
    Vec3<T> r;
    for (int i = 0; i < 3; ++i) {
      T s = a.m[i][0] * v[0];
      s += a.m[i][1] * v[1];
      s += a.m[i][2] * v[2];
      r[i] = s;
    }
    return r;
  }
  Mat3 scaled(const T& c) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] * c;
    return r;
  }
  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }
  T det() const {
    T a = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    T b = m[1][0] * m[2][2] - m[1][2] * m[2][0];
    T c = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    T r = m[0][0] * a;
    r -= m[0][1] * b;
    r += m[0][2] * c;
    return r;
  }
  /// Transposed cofactor matrix: adj(M) * M = det(M) * I.
  Mat3 adjugate() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
        r.m[i][j] = m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1];
      }
    return r;
  }
  Mat3 inverse() const {
    T d = det();
    if (is_zero(d)) throw MathError(ErrorKind::SingularInput, "matrix is not invertible");
    Mat3 a = adjugate();
    for (auto& row : a.m)
      for (auto& e : row) e = e / d;
    return a;
  }
  Mat3 inverse_transpose() const { return inverse().transpose(); }

  friend bool operator==(const Mat3& a, const Mat3& b) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!(a.m[i][j] == b.m[i][j])) return false;
    return true;
  }
};

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  T s = a[0] * b[0];
  s += a[1] * b[1];
  s += a[2] * b[2];
  return s;
}

inline Mat3<BigComplex> to_complex(const Mat3<Rational>& a, long prec) {
  Mat3<BigComplex> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = BigComplex(a.m[i][j], prec);
  return r;
}

inline Vec3<BigComplex> to_complex(const Vec3<Rational>& v, long prec) {
  return {BigComplex(v[0], prec), BigComplex(v[1], prec), BigComplex(v[2], prec)};
}

/// Dense row-major matrix.
template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, T(0)) {}

  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  void append_row(const std::vector<T>& row) {
    if (rows == 0 && cols == 0) cols = row.size();
    if (row.size() != cols) throw MathError(ErrorKind::InternalError, "row length mismatch");
    a.insert(a.end(), row.begin(), row.end());
    ++rows;
  }
};

namespace detail {

/// In-place reduced row echelon form over the rationals; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix<Rational>& A) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols && r < A.rows; ++c) {
    std::size_t p = r;
    while (p < A.rows && sgn(A(p, c)) == 0) ++p;
    if (p == A.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < A.cols; ++j) std::swap(A(p, j), A(r, j));
    Rational inv = 1 / A(r, c);
    for (std::size_t j = c; j < A.cols; ++j) A(r, j) *= inv;
    for (std::size_t i = 0; i < A.rows; ++i) {
      if (i == r || sgn(A(i, c)) == 0) continue;
      Rational f = A(i, c);
      for (std::size_t j = c; j < A.cols; ++j) A(i, j) -= f * A(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Basis of the right null space {v : A v = 0}, one vector per free column,
/// each with a 1 in its free column and zeros in the other free columns.
inline std::vector<std::vector<Rational>> kernel_basis(Matrix<Rational> A) {
  auto pivots = detail::rref(A);
  std::vector<bool> is_pivot(A.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < A.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(A.cols, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -A(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::size_t rank(Matrix<Rational> A) { return detail::rref(A).size(); }

/// Row-reduced basis of the row space, rows in echelon order.
inline std::vector<std::vector<Rational>> row_space_basis(Matrix<Rational> A) {
  auto pivots = detail::rref(A);
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    out.emplace_back(A.a.begin() + static_cast<long>(i * A.cols),
                     A.a.begin() + static_cast<long>((i + 1) * A.cols));
  return out;
}

/// Exact solution of the square system A x = b; nullopt when singular.
inline std::optional<std::vector<Rational>> solve(const Matrix<Rational>& A, const std::vector<Rational>& b) {
  Matrix<Rational> aug(A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
    aug(i, A.cols) = b[i];
  }
  auto piv = detail::rref(aug);
  if (piv.size() != A.cols) return std::nullopt;
  if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
  std::vector<Rational> x(A.cols);
  for (std::size_t i = 0; i < A.cols; ++i) x[i] = aug(i, A.cols);
  return x;
}

inline Rational determinant(Matrix<Rational> A) {
  if (A.rows != A.cols) throw MathError(ErrorKind::InternalError, "determinant of non-square matrix");
  std::size_t n = A.rows;
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(A(p, c)) == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(p, j), A(c, j));
      d = -d;
    }
    d *= A(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(A(i, c)) == 0) continue;
      Rational f = A(i, c) / A(c, c);
      for (std::size_t j = c; j < n; ++j) A(i, j) -= f * A(c, j);
    }
  }
  return d;
}

/// Numeric null space by Gaussian elimination with complete pivoting.
/// Pivots smaller than `rel_tol` times the largest entry are treated as
/// zero. Rows are normalized first so row scaling does not affect rank.
struct NumericKernel {
  std::vector<std::vector<BigComplex>> basis;
  BigFloat smallest_pivot;  // relative magnitude of the last accepted pivot
  BigFloat largest_rejected;  // relative magnitude of the largest rejected pivot (0 if none)
};

inline NumericKernel numeric_kernel(Matrix<BigComplex> A, const BigFloat& rel_tol) {
  const std::size_t n = A.cols;
  long prec = rel_tol.prec();
  for (std::size_t i = 0; i < A.rows; ++i) {
    BigFloat mx = BigFloat::zero(prec);
    for (std::size_t j = 0; j < n; ++j) mx = max(mx, abs(A(i, j)));
    if (mx.is_zero()) continue;
    BigComplex inv = BigComplex(BigFloat(1L, prec) / mx);
    for (std::size_t j = 0; j < n; ++j) A(i, j) *= inv;
  }
  BigFloat scale = BigFloat::zero(prec);
  for (const auto& e : A.a) scale = max(scale, abs(e));
  std::vector<std::size_t> colperm(n);
  for (std::size_t j = 0; j < n; ++j) colperm[j] = j;
  std::size_t r = 0;
  NumericKernel out{{}, BigFloat(1L, prec), BigFloat::zero(prec)};
  while (r < A.rows && r < n) {
    std::size_t pi = r, pj = r;
    BigFloat best = BigFloat::zero(prec);
    for (std::size_t i = r; i < A.rows; ++i)
      for (std::size_t j = r; j < n; ++j) {
        BigFloat v = norm(A(i, j));
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    BigFloat mag = scale.is_zero() ? BigFloat::zero(prec) : sqrt(best) / scale;
    if (mag <= rel_tol) {
      out.largest_rejected = mag;
      break;
    }
    out.smallest_pivot = mag;
    if (pi != r)
      for (std::size_t j = 0; j < n; ++j) std::swap(A(pi, j), A(r, j));
    if (pj != r) {
      for (std::size_t i = 0; i < A.rows; ++i) std::swap(A(i, pj), A(i, r));
      std::swap(colperm[pj], colperm[r]);
    }
    BigComplex inv = BigComplex(1L, prec) / A(r, r);
    for (std::size_t j = r; j < n; ++j) A(r, j) *= inv;
    for (std::size_t i = 0; i < A.rows; ++i) {
      if (i == r) continue;
      BigComplex f = A(i, r);
      if (f.is_zero()) continue;
      for (std::size_t j = r; j < n; ++j) A(i, j) -= f * A(r, j);
    }
    ++r;
  }
  for (std::size_t f = r; f < n; ++f) {
    std::vector<BigComplex> v(n, BigComplex::zero(prec));
    v[colperm[f]] = BigComplex(1L, prec);
    for (std::size_t k = 0; k < r; ++k) v[colperm[k]] = -A(k, f);
    out.basis.push_back(std::move(v));
  }
  return out;
}

/// Solves the square complex system A x = b with partial pivoting.
inline std::vector<BigComplex> numeric_solve(Matrix<BigComplex> A, std::vector<BigComplex> b) {
  const std::size_t n = A.rows;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    BigFloat best = norm(A(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      BigFloat v = norm(A(i, c));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best.is_zero()) throw MathError(ErrorKind::SingularInput, "singular numeric system");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(p, j), A(c, j));
      std::swap(b[p], b[c]);
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      BigComplex f = A(i, c) / A(c, c);
      if (f.is_zero()) continue;
      for (std::size_t j = c; j < n; ++j) A(i, j) -= f * A(c, j);
      b[i] -= f * b[c];
    }
  }
  std::vector<BigComplex> x(n);
  for (std::size_t k = n; k-- > 0;) {
    BigComplex s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= A(k, j) * x[j];
    x[k] = s / A(k, k);
  }
  return x;
}

}  // namespace vis3

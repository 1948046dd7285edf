#pragma once

// Arbitrary-precision real and complex floating point over MPFR.
//
// Every value carries its own precision in bits. Binary operations produce a
// result at the larger of the two operand precisions, so small exact
// constants (integers, powers of two) never degrade a high-precision
// computation.

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

namespace vis3 {

inline constexpr long kDefaultPrecision = 512;

class BigFloat {
 public:
  BigFloat() : BigFloat(0L, kDefaultPrecision) {}
  BigFloat(int v) : BigFloat(static_cast<long>(v), kDefaultPrecision) {}  // NOLINT
  BigFloat(long v, long prec = kDefaultPrecision) {                       // NOLINT
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, v, MPFR_RNDN);
  }
  BigFloat(const mpz_class& v, long prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
  }
  BigFloat(const mpq_class& v, long prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
  }
  static BigFloat from_double(double d, long prec = kDefaultPrecision) {
    BigFloat r = zero(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }
  static BigFloat zero(long prec) { return BigFloat(0L, prec); }
  /// 2^k at the given precision (exact).
  static BigFloat exp2(long k, long prec) {
    BigFloat r(1L, prec);
    mpfr_mul_2si(r.v_, r.v_, k, MPFR_RNDN);
    return r;
  }
  static BigFloat pi(long prec) {
    BigFloat r = zero(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  long prec() const { return static_cast<long>(mpfr_get_prec(v_)); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  /// Same value, re-rounded to `prec` bits.
  BigFloat with_prec(long prec) const {
    BigFloat r = zero(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Binary exponent e with 0.5 <= |x|/2^e < 1; very negative for zero.
  long exponent() const {
    if (is_zero()) return -(1L << 40);
    return static_cast<long>(mpfr_get_exp(v_));
  }

  /// Exact conversion of the stored binary value to a rational.
  mpq_class to_rational() const {
    mpz_class m;
    if (is_zero()) return mpq_class(0);
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    mpq_class q(m);
    if (e >= 0) {
      mpz_class s;
      mpz_mul_2exp(s.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(e));
      q *= s;
    } else {
      mpz_class s;
      mpz_mul_2exp(s.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
      q /= s;
    }
    q.canonicalize();
    return q;
  }

  std::string to_string(int digits = 20) const {
    char buf[256];
    mpfr_snprintf(buf, sizeof(buf), "%.*Rg", digits, v_);
    return buf;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r = zero(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r = zero(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r = zero(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r = zero(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r = zero(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
  BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
  BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }
  BigFloat& operator/=(const BigFloat& b) { return *this = *this / b; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return b <= a; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  friend BigFloat abs(const BigFloat& a) {
    BigFloat r = zero(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r = zero(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat hypot(const BigFloat& a, const BigFloat& b) {
    BigFloat r = zero(std::max(a.prec(), b.prec()));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r = zero(std::max(x.prec(), y.prec()));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat ldexp(const BigFloat& a, long k) {
    BigFloat r = zero(a.prec());
    mpfr_mul_2si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }
  friend BigFloat cos(const BigFloat& a) {
    BigFloat r = zero(a.prec());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sin(const BigFloat& a) {
    BigFloat r = zero(a.prec());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

inline BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

class BigComplex {
 public:
  BigComplex() = default;
  BigComplex(int v) : re_(v), im_(0) {}  // NOLINT
  BigComplex(long v, long prec) : re_(v, prec), im_(0L, prec) {}
  BigComplex(BigFloat re) : re_(std::move(re)), im_(BigFloat::zero(re_.prec())) {}  // NOLINT
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  BigComplex(const mpq_class& q, long prec) : re_(q, prec), im_(BigFloat::zero(prec)) {}

  static BigComplex zero(long prec) { return BigComplex(BigFloat::zero(prec), BigFloat::zero(prec)); }
  /// exp(2*pi*i*num/den) at the given precision.
  static BigComplex root_of_unity(long num, long den, long prec) {
    BigFloat ang = BigFloat::pi(prec + 16) * BigFloat(2 * num, prec + 16) / BigFloat(den, prec + 16);
    return BigComplex(cos(ang).with_prec(prec), sin(ang).with_prec(prec));
  }

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  long prec() const { return std::max(re_.prec(), im_.prec()); }
  BigComplex with_prec(long p) const { return BigComplex(re_.with_prec(p), im_.with_prec(p)); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat d = b.re_ * b.re_ + b.im_ * b.im_;
    return BigComplex((a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d);
  }
  BigComplex operator-() const { return BigComplex(-re_, -im_); }
  BigComplex& operator+=(const BigComplex& b) { return *this = *this + b; }
  BigComplex& operator-=(const BigComplex& b) { return *this = *this - b; }
  BigComplex& operator*=(const BigComplex& b) { return *this = *this * b; }
  BigComplex& operator/=(const BigComplex& b) { return *this = *this / b; }

  friend BigComplex conj(const BigComplex& a) { return BigComplex(a.re_, -a.im_); }
  friend BigFloat norm(const BigComplex& a) { return a.re_ * a.re_ + a.im_ * a.im_; }
  friend BigFloat abs(const BigComplex& a) { return hypot(a.re_, a.im_); }
  friend BigComplex ldexp(const BigComplex& a, long k) { return BigComplex(ldexp(a.re_, k), ldexp(a.im_, k)); }
  /// Principal square root.
  friend BigComplex sqrt(const BigComplex& a) {
    if (a.is_zero()) return a;
    BigFloat m = abs(a);
    BigFloat r = sqrt(ldexp(m + abs(a.re_), -1));
    if (a.re_.sign() >= 0) return BigComplex(r, a.im_ / ldexp(r, 1));
    BigFloat i = abs(a.im_) / ldexp(r, 1);
    BigFloat s = a.im_.sign() < 0 ? -r : r;
    return BigComplex(i, s);
  }

  std::string to_string(int digits = 20) const {
    return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ")";
  }

 private:
  BigFloat re_;
  BigFloat im_;
};

/// Relative numeric threshold 2^(-prec/2) used for every residual test.
inline BigFloat threshold_for(long prec) { return BigFloat::exp2(-prec / 2, prec); }

}  // namespace vis3

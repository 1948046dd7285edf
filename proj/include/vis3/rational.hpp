#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <vector>

#include "vis3/bigfloat.hpp"
#include "vis3/errors.hpp"

namespace vis3 {

/// Exact rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n" or "n/d" (optional leading sign, decimal digits only).
inline Rational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return c == ' ' || c == '\t'; }),
          s.end());
  if (s.empty()) throw ParseError("empty rational literal");
  auto valid_int = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw ParseError("malformed rational literal '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline BigComplex to_complex(const Rational& q, long prec) { return BigComplex(q, prec); }
inline BigFloat to_bigfloat(const Rational& q, long prec) { return BigFloat(q, prec); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const BigComplex& z) { return z.is_zero(); }

/// Least common multiple of the denominators.
inline Integer common_denominator(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const Rational& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

/// Scales v to a primitive integer vector whose first nonzero entry is
/// positive. Returns the scalar c with result = c * v (zero vector: c = 1).
inline Rational make_primitive(std::vector<Rational>& v) {
  Integer den = common_denominator(v);
  Integer g = 0;
  for (const Rational& q : v) {
    Integer n = q.get_num() * (den / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) return Rational(1);
  Rational c(den, g);
  c.canonicalize();
  for (const Rational& q : v) {
    if (sgn(q) != 0) {
      if (sgn(q) < 0) c = -c;
      break;
    }
  }
  for (Rational& q : v) q *= c;
  return c;
}

}  // namespace vis3

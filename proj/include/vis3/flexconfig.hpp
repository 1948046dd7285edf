#pragma once

// Flex schemes of smooth plane cubics, the Hesse configuration of their 12
// lines, and the combinatorial dual scheme.

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <vector>

#include "vis3/covariants.hpp"

namespace vis3 {

/// The 12 collinear triples (1-based labels), grouped by triangle. Label
/// 3a+b+1 corresponds to the point (a, b) of the affine plane over F_3.
inline const std::array<std::array<std::array<int, 3>, 3>, 4>& hesse_table() {
  static const std::array<std::array<std::array<int, 3>, 3>, 4> t = {{
      {{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}},
      {{{1, 4, 7}, {2, 5, 8}, {3, 6, 9}}},
      {{{1, 5, 9}, {2, 6, 7}, {3, 4, 8}}},
      {{{1, 6, 8}, {2, 4, 9}, {3, 5, 7}}},
  }};
  return t;
}

/// Affine coordinates of a 0-based label, and back.
inline std::array<int, 2> label_coords(int idx) { return {idx / 3, idx % 3}; }
inline int coords_label(int a, int b) { return 3 * (((a % 3) + 3) % 3) + (((b % 3) + 3) % 3); }

struct FlexScheme {
  std::array<Vec3<BigComplex>, 9> points;
  long precision = kDefaultPrecision;
  std::optional<TernaryCubic> source;
  bool labeled = false;  // points[i] carries label i+1

  /// M * points (the scheme of G o M^{-1}).
  FlexScheme transformed(const Mat3<BigComplex>& M) const {
    FlexScheme out = *this;
    out.source.reset();
    for (auto& p : out.points) p = normalize_point(M * p);
    return out;
  }
};

struct FlexOptions {
  long precision = kDefaultPrecision;
  std::uint64_t seed = 0;
  int attempts = 8;
};

namespace detail {

inline BigFloat vec_norm(const Vec3<BigComplex>& v) { return sqrt(norm(v[0]) + norm(v[1]) + norm(v[2])); }

/// Relative residual |G(p)| / (||G|| |p|^3).
inline BigFloat cubic_residual(const ComplexCubic& G, const Vec3<BigComplex>& p) {
  BigFloat n = vec_norm(p);
  return abs(G(p)) / (coeff_norm(G) * n * n * n);
}

inline BigFloat collinearity(const Vec3<BigComplex>& a, const Vec3<BigComplex>& b, const Vec3<BigComplex>& c) {
  Mat3<BigComplex> M = Mat3<BigComplex>::from_columns(a, b, c);
  return abs(M.det()) / (vec_norm(a) * vec_norm(b) * vec_norm(c));
}

/// Root of the 2x2 system G = H = 0 in the chart y = 1 by Newton's method.
inline void polish_flex(const ComplexCubic& G, const ComplexCubic& H, BigComplex& x, BigComplex& z, int steps) {
  ComplexCubic Gx = G.partial(0), Gz = G.partial(2), Hx = H.partial(0), Hz = H.partial(2);
  long prec = x.prec();
  BigComplex one(1L, prec);
  for (int s = 0; s < steps; ++s) {
    Vec3<BigComplex> v{x, one, z};
    BigComplex g = G(v), h = H(v);
    BigComplex a = Gx(v), b = Gz(v), c = Hx(v), d = Hz(v);
    BigComplex det = a * d - b * c;
    if (det.is_zero()) return;
    x -= (d * g - b * h) / det;
    z -= (a * h - c * g) / det;
  }
}

}  // namespace detail

/// The 9 points of G = H(G) = 0. A random rational change of coordinates
/// makes the z-eliminant of degree 9 and square-free; its roots are lifted
/// to the curve and Newton-polished on the 2-equation system.
inline FlexScheme flex_points(const TernaryCubic& G, const FlexOptions& opt = {}) {
  if (G.is_zero()) throw MathError(ErrorKind::SingularInput, "flex_points of the zero form");
  if (is_singular(G, {opt.precision, opt.seed, 4}).singular)
    throw MathError(ErrorKind::SingularInput, "flex_points of a singular cubic");
  const long prec = opt.precision;
  const long wp = prec + 64;
  TernaryCubic H = hessian(G);
  std::mt19937_64 rng(opt.seed ^ 0xf1e5ULL);
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    Mat3<Rational> T = attempt == 0 ? Mat3<Rational>::identity() : detail::random_unimodularish(rng, 2 + attempt);
    TernaryCubic Gt = G.act(T), Ht = H.act(T);
    if (sgn(Gt.coeff(0, 0, 3)) == 0 || sgn(Ht.coeff(0, 0, 3)) == 0) continue;
    BinaryForm<Rational> R = resultant_z(Gt, Ht);
    if (R.degree != 9 || sgn(R.c[9]) == 0) continue;
    UniPoly<Rational> r = R.dehomogenize();
    if (gcd(r, r.derivative()).degree() != 0) continue;

    ComplexCubic Gc = to_complex(Gt, wp), Hc = to_complex(Ht, wp);
    std::vector<RootCluster> xs = rational_poly_roots(r, wp, {opt.seed, 0});
    if (xs.size() != 9) continue;
    FlexScheme out;
    out.precision = prec;
    out.source = G;
    Mat3<BigComplex> Tc = to_complex(T, wp);
    bool ok = true;
    for (std::size_t k = 0; k < 9 && ok; ++k) {
      BigComplex x = xs[k].value.with_prec(wp);
      // z-roots of G(x, 1, z)
      std::vector<BigComplex> zc(4, BigComplex::zero(wp));
      for (std::size_t i = 0; i < Gc.size(); ++i) {
        Exponent e = ComplexCubic::exponent(3, i);
        BigComplex term = Gc[i];
        for (int t = 0; t < e.x; ++t) term *= x;
        zc[static_cast<std::size_t>(e.z)] += term;
      }
      BigComplex best_z;
      std::optional<BigFloat> best;
      for (const auto& z : complex_roots(UniPoly<BigComplex>(zc), wp, {opt.seed, 0})) {
        BigFloat v = abs(Hc(Vec3<BigComplex>{x, BigComplex(1L, wp), z}));
        if (!best || v < *best) {
          best = v;
          best_z = z;
        }
      }
      BigComplex z = best_z;
      detail::polish_flex(Gc, Hc, x, z, 6);
      Vec3<BigComplex> p = normalize_point(Tc * Vec3<BigComplex>{x, BigComplex(1L, wp), z});
      for (auto& c : p) c = c.with_prec(prec);
      out.points[k] = p;
    }
    // validation
    ComplexCubic G0 = to_complex(G, prec), H0 = to_complex(H, prec);
    BigFloat thr = threshold_for(prec);
    for (const auto& p : out.points)
      if (detail::cubic_residual(G0, p) > thr || detail::cubic_residual(H0, p) > thr) ok = false;
    BigFloat sep = BigFloat::exp2(-prec / 4, prec);
    for (int i = 0; i < 9 && ok; ++i)
      for (int j = i + 1; j < 9; ++j)
        if (projective_distance(out.points[static_cast<std::size_t>(i)], out.points[static_cast<std::size_t>(j)]) < sep)
          ok = false;
    if (!ok) throw MathError(ErrorKind::DegenerateIntersection, "flex points failed residual or separation checks");
    return out;
  }
  throw MathError(ErrorKind::DegenerateIntersection, "no coordinate change gave a square-free eliminant");
}

// ---------------------------------------------------------------------------
// Hesse configuration

struct HesseLabeling {
  std::array<int, 9> order{};  // order[label-1] = index of the point in the input scheme
  std::array<std::array<std::array<int, 3>, 3>, 4> triangles = hesse_table();
};

/// All collinear triples (0-based indices, increasing).
inline std::vector<std::array<int, 3>> collinear_triples(const FlexScheme& phi) {
  std::vector<std::array<int, 3>> out;
  BigFloat thr = threshold_for(phi.precision);
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j)
      for (int k = j + 1; k < 9; ++k)
        if (detail::collinearity(phi.points[static_cast<std::size_t>(i)], phi.points[static_cast<std::size_t>(j)],
                                 phi.points[static_cast<std::size_t>(k)]) < thr)
          out.push_back({i, j, k});
  return out;
}

/// Relabels so that the collinear triples are exactly the fixed table.
/// Point 0 becomes label 1, point 1 label 2, and the first point off their
/// line label 4; the rest follows from the affine structure.
inline HesseLabeling hesse_labeling(const FlexScheme& phi) {
  auto triples = collinear_triples(phi);
  if (triples.size() != 12)
    throw MathError(ErrorKind::BadConfiguration,
                    "found " + std::to_string(triples.size()) + " collinear triples, expected 12");
  std::array<std::array<int, 9>, 9> third{};
  for (auto& row : third) row.fill(-1);
  for (const auto& t : triples) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (a == b) continue;
        int c = 3 - a - b;
        int& slot = third[static_cast<std::size_t>(t[static_cast<std::size_t>(a)])][static_cast<std::size_t>(t[static_cast<std::size_t>(b)])];
        if (slot != -1) throw MathError(ErrorKind::BadConfiguration, "two lines share a pair of flexes");
        slot = t[static_cast<std::size_t>(c)];
      }
  }
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      if (i != j && third[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] < 0)
        throw MathError(ErrorKind::BadConfiguration, "a pair of flexes lies on no line");
  auto thr = [&](int a, int b) { return third[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };

  HesseLabeling L;
  std::array<int, 9> pos;  // label index (0-based) -> point index
  pos.fill(-1);
  pos[0] = 0;                // (0,0)
  pos[1] = 1;                // (0,1)
  pos[2] = thr(0, 1);        // (0,2)
  int a = -1;
  for (int i = 0; i < 9 && a < 0; ++i)
    if (i != pos[0] && i != pos[1] && i != pos[2]) a = i;
  pos[3] = a;                // (1,0)
  pos[6] = thr(pos[0], a);   // (2,0)
  // (a,b) = third((-a, 0) ... ) : third(X, Y) = -(X + Y)
  pos[8] = thr(pos[3], pos[1]);  // (2,2)
  pos[4] = thr(pos[6], pos[2]);  // (1,1)
  pos[7] = thr(pos[3], pos[2]);  // (2,1)
  pos[5] = thr(pos[6], pos[1]);  // (1,2)
  std::array<bool, 9> used{};
  for (int p : pos) {
    if (p < 0 || used[static_cast<std::size_t>(p)])
      throw MathError(ErrorKind::BadConfiguration, "collinear triples do not form an affine plane");
    used[static_cast<std::size_t>(p)] = true;
  }
  for (const auto& tri : L.triangles)
    for (const auto& line : tri)
      if (thr(pos[static_cast<std::size_t>(line[0] - 1)], pos[static_cast<std::size_t>(line[1] - 1)]) !=
          pos[static_cast<std::size_t>(line[2] - 1)])
        throw MathError(ErrorKind::BadConfiguration, "labeling does not match the Hesse table");
  L.order = pos;
  return L;
}

/// The scheme reordered by a labeling.
inline FlexScheme apply_labeling(const FlexScheme& phi, const HesseLabeling& L) {
  FlexScheme out = phi;
  for (int i = 0; i < 9; ++i)
    out.points[static_cast<std::size_t>(i)] = phi.points[static_cast<std::size_t>(L.order[static_cast<std::size_t>(i)])];
  out.labeled = true;
  return out;
}

inline FlexScheme labeled(const FlexScheme& phi) {
  return phi.labeled ? phi : apply_labeling(phi, hesse_labeling(phi));
}

/// The line (as a dual point) through two labeled points.
inline Vec3<BigComplex> line_through(const Vec3<BigComplex>& a, const Vec3<BigComplex>& b) {
  return normalize_point(cross(a, b));
}

/// Product of the three lines of triangle t as a cubic form.
inline ComplexCubic triangle_cubic(const FlexScheme& phi_labeled, int t) {
  const auto& tri = hesse_table()[static_cast<std::size_t>(t)];
  long prec = phi_labeled.precision;
  ComplexCubic out = ComplexCubic::constant(BigComplex(1L, prec));
  for (const auto& line : tri) {
    auto l = line_through(phi_labeled.points[static_cast<std::size_t>(line[0] - 1)],
                          phi_labeled.points[static_cast<std::size_t>(line[1] - 1)]);
    out = out * ComplexCubic::linear(l[0], l[1], l[2]);
  }
  return out;
}

/// The dual flex scheme: within each triangle, two of its lines meet in a
/// point labeled by the third line; the four such points whose label
/// contains i lie on a line p_i, and p_i is the i-th dual point.
inline FlexScheme dual_scheme(const FlexScheme& phi_in) {
  FlexScheme phi = labeled(phi_in);
  const long prec = phi.precision;
  BigFloat thr = threshold_for(prec);
  std::array<std::vector<Vec3<BigComplex>>, 9> through;
  for (const auto& tri : hesse_table()) {
    std::array<Vec3<BigComplex>, 3> lines;
    for (int k = 0; k < 3; ++k) {
      const auto& ln = tri[static_cast<std::size_t>(k)];
      lines[static_cast<std::size_t>(k)] = line_through(phi.points[static_cast<std::size_t>(ln[0] - 1)],
                                                        phi.points[static_cast<std::size_t>(ln[1] - 1)]);
    }
    for (int k = 0; k < 3; ++k) {
      // meet of the other two lines, labeled by line k
      const auto& l1 = lines[static_cast<std::size_t>((k + 1) % 3)];
      const auto& l2 = lines[static_cast<std::size_t>((k + 2) % 3)];
      Vec3<BigComplex> L = normalize_point(cross(l1, l2));
      for (int i : tri[static_cast<std::size_t>(k)]) through[static_cast<std::size_t>(i - 1)].push_back(L);
    }
  }
  FlexScheme out;
  out.precision = prec;
  out.labeled = true;
  for (int i = 0; i < 9; ++i) {
    const auto& pts = through[static_cast<std::size_t>(i)];
    if (pts.size() != 4) throw MathError(ErrorKind::BadConfiguration, "dual construction lost an incidence");
    // the best-conditioned pair spans the line; the others must lie on it
    Vec3<BigComplex> best;
    BigFloat best_mag = BigFloat::zero(prec);
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        auto c = cross(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)]);
        BigFloat m = detail::vec_norm(c);
        if (m > best_mag) {
          best_mag = m;
          best = c;
        }
      }
    Vec3<BigComplex> line = normalize_point(best);
    for (const auto& p : pts)
      if (abs(dot(line, p)) / (detail::vec_norm(line) * detail::vec_norm(p)) > thr)
        throw MathError(ErrorKind::BadConfiguration, "four L-points are not collinear");
    out.points[static_cast<std::size_t>(i)] = line;
  }
  return out;
}

/// Nearest-neighbour matching of two 9-point sets; returns perm with
/// b[perm[i]] ~ a[i], or nothing if some pair is farther than tol.
inline std::optional<std::array<int, 9>> match_point_sets(const FlexScheme& a, const FlexScheme& b,
                                                          const BigFloat& tol) {
  std::array<int, 9> perm;
  std::array<bool, 9> used{};
  for (int i = 0; i < 9; ++i) {
    int best = -1;
    std::optional<BigFloat> bd;
    for (int j = 0; j < 9; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      BigFloat d = projective_distance(a.points[static_cast<std::size_t>(i)], b.points[static_cast<std::size_t>(j)]);
      if (!bd || d < *bd) {
        bd = d;
        best = j;
      }
    }
    if (best < 0 || *bd > tol) return std::nullopt;
    used[static_cast<std::size_t>(best)] = true;
    perm[static_cast<std::size_t>(i)] = best;
  }
  return perm;
}

inline bool same_point_set(const FlexScheme& a, const FlexScheme& b) {
  long prec = std::min(a.precision, b.precision);
  return match_point_sets(a, b, threshold_for(prec)).has_value();
}

}  // namespace vis3

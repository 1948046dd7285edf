#pragma once

// Serialized pipeline results. Exact values are strings; residuals are
// decimal strings with a fixed digit count so output is reproducible.

#include <string>

#include "vis3/genus2.hpp"
#include "vis3/io.hpp"

namespace vis3 {

inline constexpr const char* kVersion = "0.1.0";

namespace io {

inline json residual_json(const BigFloat& r) { return r.to_string(6); }

inline json matrix_json(const Mat3<Rational>& m) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) v.push_back(m(i, j));
  return rationals_json(v);
}

inline json certificate_json(const NonIsogenyCertificate& c) {
  return json{{"prime", c.prime}, {"count_e1", c.count1}, {"count_e2", c.count2}};
}

struct BundleContext {
  long precision = kDefaultPrecision;
  std::uint64_t seed = 0;
  std::size_t samples = 24;
};

inline json result_bundle(const PipelineResult& R, const BundleContext& ctx) {
  const SurfacePair& S = R.surface;
  json j;
  j["version"] = kVersion;
  j["seed"] = ctx.seed;
  j["precision_bits"] = ctx.precision;
  j["samples_requested"] = ctx.samples;
  j["e1"] = model_json(S.E1);
  j["e2"] = model_json(S.E2);
  j["e2"]["j"] = rational_json(S.E2.j());
  j["f"] = cubic_json(S.F);
  j["g"] = cubic_json(S.G);
  j["g_is_weierstrass"] = S.g_weierstrass;
  Pencil pf = dual_pencil(S.F, {ctx.precision, ctx.seed, 4});
  j["pencil"] = json{{"basis", json::array({cubic_json(pf.first()), cubic_json(pf.second())})},
                     {"parameter", rationals_json({S.parameter.s, S.parameter.t})},
                     {"member", cubic_json(S.pencil_member)}};
  j["origin1"] = point_json(S.origin1);
  j["origin2"] = point_json(S.origin2);
  j["shift1"] = S.shift1 ? point_json(*S.shift1) : json(nullptr);
  j["shift2"] = S.shift2 ? point_json(*S.shift2) : json(nullptr);
  j["incidence"] = bilinear_json(S.incidence);
  j["equivalence"] = S.equivalence ? matrix_json(*S.equivalence) : json(nullptr);
  j["rational_point"] = S.rational_point ? point_json(*S.rational_point) : json(nullptr);
  j["delta_member"] = S.delta_member ? cubic_json(*S.delta_member) : json(nullptr);
  j["non_isogeny"] = S.certificate ? certificate_json(*S.certificate) : json(nullptr);
  j["c"] = bilinear_json(R.curve.form);
  j["c"]["origin_convention"] = R.curve.origin_convention;
  j["c"]["involution_invariant"] = R.curve.involution_invariant;
  j["c"]["distinct_from_incidence"] = R.curve.distinct_from_incidence;
  j["c"]["images"] = R.curve.samples;
  j["c"]["fit_residual"] = residual_json(R.curve.fit_residual);
  j["c"]["kernel_gap"] = residual_json(R.curve.kernel_gap);
  j["verification"] = json{{"fresh_samples", R.verification.samples},
                           {"max_residual", residual_json(R.verification.max_residual)},
                           {"exact_points", R.verification.exact_points},
                           {"vacuous", R.verification.vacuous},
                           {"passed", R.verification.passed}};
  j["matches_expected"] = R.matches_expected ? json(*R.matches_expected) : json(nullptr);
  j["flags"] = S.flags;
  j["notes"] = R.notes;
  return j;
}

}  // namespace io
}  // namespace vis3

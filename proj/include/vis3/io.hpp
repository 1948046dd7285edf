#pragma once

// JSON documents. Rationals are always strings ("n" or "n/d").

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "vis3/forms.hpp"
#include "vis3/rational.hpp"
#include "vis3/weierstrass.hpp"

namespace vis3::io {

using nlohmann::json;

inline json rational_json(const Rational& q) { return to_string(q); }

inline Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw ParseError("rational values must be strings or integers");
}

inline json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(rational_json(q));
  return a;
}

inline std::vector<Rational> rationals_from(const json& j, std::size_t expected) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  if (j.size() != expected)
    throw ParseError("expected " + std::to_string(expected) + " entries, got " + std::to_string(j.size()));
  std::vector<Rational> v;
  for (const auto& e : j) v.push_back(rational_from(e));
  return v;
}

inline json cubic_json(const TernaryCubic& F) {
  return json{{"monomial_order", kCubicMonomialOrder}, {"coefficients", rationals_json(F.coeffs())}};
}

inline TernaryCubic cubic_from(const json& j) {
  if (!j.is_object() || !j.contains("coefficients")) throw ParseError("cubic document needs \"coefficients\"");
  if (j.contains("monomial_order") && j["monomial_order"] != kCubicMonomialOrder)
    throw ParseError("unsupported monomial order");
  return TernaryCubic(3, rationals_from(j["coefficients"], 10));
}

inline json point_json(const Vec3<Rational>& p) { return rationals_json({p[0], p[1], p[2]}); }

inline json bilinear_json(const BilinearForm& B) {
  return json{{"rows", "x,y,z"}, {"columns", "u,v,w"}, {"coefficients", rationals_json(B.row_major())},
              {"text", B.to_string()}};
}

inline BilinearForm bilinear_from(const json& j) {
  if (!j.is_object() || !j.contains("coefficients")) throw ParseError("bilinear document needs \"coefficients\"");
  return BilinearForm::from_row_major(rationals_from(j["coefficients"], 9));
}

inline json model_json(const RationalModel& W) {
  json a = json::array();
  for (const auto& c : W.coefficients()) a.push_back(rational_json(c));
  return json{{"weierstrass", a}};
}

/// {"weierstrass": [a1, a2, a3, a4, a6]}
inline RationalModel model_from(const json& j) {
  if (!j.is_object() || !j.contains("weierstrass")) throw ParseError("model document needs \"weierstrass\"");
  auto v = rationals_from(j["weierstrass"], 5);
  RationalModel W(v[0], v[1], v[2], v[3], v[4]);
  if (sgn(W.discriminant()) == 0) throw MathError(ErrorKind::SingularInput, "singular Weierstrass model");
  return W;
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

inline TernaryCubic read_cubic(const std::string& path) { return cubic_from(read_json_file(path)); }

}  // namespace vis3::io

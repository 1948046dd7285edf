#include <gtest/gtest.h>

#include "support.hpp"
#include "vis3/bundle.hpp"

using namespace vis3;
using vis3::test::fixture_cubic;
using vis3::test::fixture_path;

TEST(Io, CubicRoundTrip) {
  TernaryCubic F = fixture_cubic("F681");
  EXPECT_EQ(io::cubic_from(io::parse_json_text(io::cubic_json(F).dump())), F);
  TernaryCubic G = make_cubic({Rational(1, 3), 0, -7, 0, 0, Rational(-22, 9), 1, 0, 0, 5});
  EXPECT_EQ(io::cubic_from(io::cubic_json(G)), G);
}

TEST(Io, RejectsBadDocuments) {
  EXPECT_THROW(io::cubic_from(io::parse_json_text(R"({"coefficients": ["1","2"]})")), ParseError);
  EXPECT_THROW(io::cubic_from(io::parse_json_text(R"({"coefficients": [1.5,0,0,0,0,0,0,0,0,0]})")), ParseError);
  EXPECT_THROW(io::cubic_from(io::parse_json_text(R"({"coefficients": ["1/0","0","0","0","0","0","0","0","0","0"]})")),
               ParseError);
  EXPECT_THROW(io::parse_json_text("{"), ParseError);
  EXPECT_THROW(io::model_from(io::parse_json_text(R"({"weierstrass": ["0","0","0","0","0"]})")), MathError);
}

TEST(Io, BilinearAndModelRoundTrip) {
  BilinearForm C = io::bilinear_from(io::read_json_file(fixture_path("C-681.json")));
  EXPECT_EQ(io::bilinear_from(io::parse_json_text(io::bilinear_json(C).dump())), C);
  RationalModel W(1, 1, 0, -1154, -15345);
  EXPECT_EQ(io::model_from(io::parse_json_text(io::model_json(W).dump())), W);
}

TEST(Io, ResultBundleRoundTrip) {
  PipelineOptions o;
  o.target = RationalModel(0, -1, 1, 0, 2);
  RationalModel E1(1, 1, 0, -1154, -15345);
  PipelineResult R = pipeline(E1, fixture_cubic("C1-681"), o);
  io::json j = io::parse_json_text(io::result_bundle(R, {}).dump(2));
  EXPECT_EQ(io::bilinear_from(j["c"]), R.curve.form);
  EXPECT_EQ(io::model_from(j["e2"]), R.surface.E2);
  EXPECT_EQ(io::rational_from(j["e2"]["j"]), Rational(-4096, 2043));
  EXPECT_EQ(io::cubic_from(j["g"]), R.surface.G);
  auto st = io::rationals_from(j["pencil"]["parameter"], 2);
  EXPECT_EQ(st[0], R.surface.parameter.s);
  EXPECT_EQ(st[1], R.surface.parameter.t);
  ASSERT_TRUE(j["non_isogeny"].is_object());
  EXPECT_EQ(j["non_isogeny"]["prime"].get<long>(), R.surface.certificate->prime);
  EXPECT_EQ(j["precision_bits"].get<long>(), kDefaultPrecision);
  EXPECT_EQ(j["version"], kVersion);
  // same inputs, same bytes
  EXPECT_EQ(io::result_bundle(pipeline(E1, fixture_cubic("C1-681"), o), {}).dump(2), io::result_bundle(R, {}).dump(2));
}

// vis3: JSON front end. Results go to stdout, diagnostics to stderr.
// Exit codes: 0 ok, 2 parse, 3 math, 4 precision.

#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vis3/vis3.hpp"

using namespace vis3;
using io::json;

namespace {

struct Common {
  long precision = kDefaultPrecision;
  std::uint64_t seed = 0;
  long height_bound = 100;
  std::string target_j, target_e2;
  std::size_t samples = 24;
  std::string input;   // path, or "-" for stdin
  std::string cubic;   // inline "c1,...,c10"
  std::string expected;
};

json read_document(const std::string& path) {
  if (path == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return io::parse_json_text(text);
  }
  return io::read_json_file(path);
}

TernaryCubic input_cubic(const Common& c) {
  if (!c.cubic.empty()) {
    std::vector<Rational> v;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = c.cubic.find(',', start);
      v.push_back(parse_rational(c.cubic.substr(start, comma == std::string::npos ? comma : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (v.size() != 10) throw ParseError("--cubic needs 10 coefficients, got " + std::to_string(v.size()));
    return TernaryCubic(3, v);
  }
  if (c.input.empty()) throw ParseError("no input: give a cubic document path or --cubic");
  return io::cubic_from(read_document(c.input));
}

std::string digits(const BigFloat& x) { return x.to_string(40); }

json complex_point_json(const Vec3<BigComplex>& p) {
  json a = json::array();
  for (const auto& c : normalize_point(p)) a.push_back(json::array({digits(c.re()), digits(c.im())}));
  return a;
}

json scheme_json(const FlexScheme& phi) {
  json a = json::array();
  for (const auto& p : phi.points) a.push_back(complex_point_json(p));
  return a;
}

json table_json(const std::array<std::array<int, 9>, 9>& t) {
  json a = json::array();
  for (const auto& row : t) a.push_back(row);
  return a;
}

json cmd_covariants(const Common& c) {
  TernaryCubic F = input_cubic(c);
  return json{{"input", io::cubic_json(F)},
              {"hessian", io::cubic_json(hessian(F))},
              {"caylean", io::cubic_json(caylean(F))}};
}

json cmd_dual_pencil(const Common& c) {
  TernaryCubic F = input_cubic(c);
  SingularityOptions so{c.precision, c.seed, 4};
  Pencil pen = dual_pencil(F, so);
  SingularMembers sm = singular_members(pen, so);
  json sing = json::array();
  for (const auto& p : sm.rational) sing.push_back(io::rationals_json({p.s, p.t}));
  return json{{"basis", json::array({io::cubic_json(pen.first()), io::cubic_json(pen.second())})},
              {"singular_rational", sing},
              {"singular_count", sm.total_count}};
}

json cmd_flexes(const Common& c) {
  TernaryCubic F = input_cubic(c);
  FlexScheme phi = labeled(flex_points(F, {c.precision, c.seed, 8}));
  json rat = json::array();
  for (const auto& p : detail::rational_flexes(F, c.precision, c.seed)) rat.push_back(io::point_json(p));
  json lines = json::array();
  for (const auto& t : collinear_triples(phi)) lines.push_back(json::array({t[0] + 1, t[1] + 1, t[2] + 1}));
  return json{{"precision_bits", c.precision},
              {"labeled_points", scheme_json(phi)},
              {"collinear_triples", lines},
              {"rational_flexes", rat},
              {"dual_scheme", scheme_json(dual_scheme(phi))}};
}

json cmd_theta_check(const Common& c) {
  TernaryCubic F = input_cubic(c);
  AntiIsometryReport r = anti_isometry_check(flex_points(F, {c.precision, c.seed, 8}));
  return json{{"stabilizer_size", r.first.elements.size()},
              {"dual_stabilizer_size", r.second.elements.size()},
              {"pairing", table_json(r.first.pairing)},
              {"dual_pairing", table_json(r.second.pairing)},
              {"lambda", r.lambda},
              {"maps_onto", r.maps_onto},
              {"pairing_inverted", r.pairing_inverted},
              {"alternating", r.alternating},
              {"nondegenerate", r.nondegenerate},
              {"passed", r.passed()}};
}

json cmd_pencil_solve(const Common& c) {
  TernaryCubic F = input_cubic(c);
  Rational j0;
  if (!c.target_e2.empty()) {
    if (!c.target_j.empty()) throw ParseError("give --target-j or --target-e2, not both");
    j0 = parse_model(c.target_e2).j();
  } else if (!c.target_j.empty()) {
    j0 = parse_rational(c.target_j);
  } else {
    throw ParseError("pencil-solve needs --target-j or --target-e2");
  }
  Pencil pen = dual_pencil(F, {c.precision, c.seed, 4});
  json sols = json::array();
  for (const auto& s : j_solve_on_pencil(pen, j0, {c.precision, c.seed}))
    sols.push_back(json{{"parameter", io::rationals_json({s.parameter.s, s.parameter.t})},
                        {"member", io::cubic_json(s.member)}});
  return json{{"target_j", io::rational_json(j0)},
              {"basis", json::array({io::cubic_json(pen.first()), io::cubic_json(pen.second())})},
              {"solutions", sols}};
}

json cmd_point_search(const Common& c) {
  TernaryCubic F = input_cubic(c);
  if (c.height_bound < 1) throw ParseError("--height-bound must be positive");
  json pts = json::array();
  for (const auto& p : point_search(F, c.height_bound)) pts.push_back(io::point_json(p));
  return json{{"height_bound", c.height_bound}, {"points", pts}};
}

json cmd_visualize(const Common& c) {
  if (c.input.empty()) throw ParseError("visualize needs an input document with \"e1\" and \"cubic\"");
  json doc = read_document(c.input);
  if (!doc.is_object() || !doc.contains("e1") || !doc.contains("cubic"))
    throw ParseError("visualize input needs \"e1\" and \"cubic\"");
  PipelineOptions o;
  o.precision = c.precision;
  o.seed = c.seed;
  o.height_bound = c.height_bound;
  o.samples = c.samples;
  RationalModel E1 = io::model_from(doc["e1"]);
  TernaryCubic delta = io::cubic_from(doc["cubic"]);
  if (!c.target_j.empty()) throw ParseError("visualize takes --target-e2, not --target-j");
  if (!c.target_e2.empty())
    o.target = parse_model(c.target_e2);
  else if (doc.contains("target_e2"))
    o.target = io::model_from(doc["target_e2"]);
  if (!c.expected.empty())
    o.expected = io::bilinear_from(read_document(c.expected));
  else if (doc.contains("expected_c"))
    o.expected = io::bilinear_from(doc["expected_c"]);
  PipelineResult R = pipeline(E1, delta, o);
  for (const auto& n : R.notes) std::cerr << "note: " << n << "\n";
  return io::result_bundle(R, {c.precision, c.seed, c.samples});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plane cubics, 3-coverings and genus-2 curves on E1 x E2"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* s) {
    s->add_option("input", c.input, "input JSON document (\"-\" reads stdin)");
    s->add_option("--precision-bits", c.precision, "working precision in bits")->default_val(kDefaultPrecision);
    s->add_option("--seed", c.seed, "random seed")->default_val(0);
  };
  struct Cmd {
    const char* name;
    const char* help;
    json (*run)(const Common&);
  };
  const Cmd cmds[] = {
      {"covariants", "Hessian and Caylean of a cubic", cmd_covariants},
      {"dual-pencil", "the dual pencil of a cubic and its singular members", cmd_dual_pencil},
      {"flexes", "labeled flex points and the dual scheme", cmd_flexes},
      {"theta-check", "stabilizer, Weil pairing and the inverse-transpose check", cmd_theta_check},
      {"pencil-solve", "members of the dual pencil with a given j", cmd_pencil_solve},
      {"point-search", "rational points up to a height bound", cmd_point_search},
      {"visualize", "full pipeline; emits a result bundle", cmd_visualize},
  };
  std::vector<std::pair<CLI::App*, const Cmd*>> subs;
  for (const auto& cmd : cmds) {
    CLI::App* s = app.add_subcommand(cmd.name, cmd.help);
    add_common(s);
    std::string n = cmd.name;
    if (n != "visualize") s->add_option("--cubic", c.cubic, "inline coefficients c1,...,c10");
    if (n == "point-search" || n == "visualize")
      s->add_option("--height-bound", c.height_bound, "height bound for point search")->default_val(100);
    if (n == "pencil-solve") s->add_option("--target-j", c.target_j, "target j as p/q");
    if (n == "pencil-solve" || n == "visualize")
      s->add_option("--target-e2", c.target_e2, "target model a1,a2,a3,a4,a6");
    if (n == "visualize") {
      s->add_option("--samples", c.samples, "images used for the fit")->default_val(24);
      s->add_option("--expected", c.expected, "bilinear form document to match up to scale");
    }
    subs.emplace_back(s, &cmd);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (c.precision < 64) throw ParseError("--precision-bits must be at least 64");
    for (const auto& [s, cmd] : subs)
      if (s->parsed()) {
        std::cout << cmd->run(c).dump(2) << "\n";
        return 0;
      }
    return 2;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const PrecisionError& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "InternalError: " << e.what() << "\n";
    return 3;
  }
}

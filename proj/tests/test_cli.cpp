#include <doctest.h>

#include <filesystem>
#include <json.hpp>

#include "corpus.hpp"
#include "genquant/cli/commands.hpp"
#include "genquant/cli/document.hpp"
#include "genquant/cli/render.hpp"
#include "genquant/error.hpp"

using namespace gq;
using namespace gq::cli;
using sym::Expr;

namespace {

const std::filesystem::path systems_dir{GENQUANT_SYSTEMS_DIR};

template <class E>
E error_of(std::string_view source) {
  try {
    parse_document(source);
  } catch (const E& e) {
    return e;
  } catch (const std::exception& e) {
    FAIL("unexpected error kind: ", e.what());
  }
  FAIL("no error for: ", std::string(source));
  throw std::logic_error("unreachable");
}

Report run(const std::string& command, const std::vector<std::string>& files,
           std::optional<std::string> potential = std::nullopt) {
  CommandOptions options;
  options.command = command;
  for (const auto& f : files) options.documents.push_back(load_document(systems_dir / (f + ".gq")));
  options.potential = std::move(potential);
  return run_command(options);
}

}  // namespace

TEST_SUITE("parser") {
  TEST_CASE("shipped spherical document") {
    const auto doc = load_document(systems_dir / "spherical.gq");
    CHECK(doc.name == "spherical");
    CHECK(doc.coordinate_names() == std::vector<std::string>{"r", "theta", "phi"});
    CHECK(doc.has_map());
    CHECK(doc.map_targets == std::vector<std::string>{"x", "y", "z"});
    const Expr r = sym::symbol("r"), theta = sym::symbol("theta"), phi = sym::symbol("phi");
    CHECK(doc.map[0] == r * sym::sin(theta) * sym::cos(phi));
    CHECK(doc.map[2] == r * sym::cos(theta));
    CHECK(doc.coordinates[1].hi == Expr(sym::symbol("pi")));
    CHECK(doc.coordinates[2].periodic);
    REQUIRE(doc.potential.has_value());
    CHECK(*doc.potential == Expr::field("V", {"r"}));
    CHECK(doc.system().scale_factor(2) == r * sym::sin(theta));
  }

  TEST_CASE("scale factors without a map") {
    const auto doc = parse_document("coords: x, y, z; factors: 1, 1, 1;");
    CHECK(doc.name == "unnamed");
    CHECK_FALSE(doc.has_map());
    const auto cs = doc.system();
    CHECK(cs.orthogonality_assumed());
    for (int i = 0; i < 3; ++i) CHECK(cs.scale_factor(i).is_one());
    const auto labelled = parse_document("coords: r, theta; range r: (0, inf); factors: h1 = 1, h_theta = r;");
    CHECK(labelled.factors[1] == sym::symbol("r"));
  }

  TEST_CASE("dangling parenthesis") {
    const auto e = error_of<SyntaxError>("coords: r, theta, phi;\nfactors: h1 = 1, h2 = r*sin(");
    CHECK(e.position().line == 2);
    CHECK(e.position().column == 28);
    const std::string what = e.what();
    CHECK(what.rfind("2:28:", 0) == 0);
    CHECK(what.find("expected") != std::string::npos);
  }

  TEST_CASE("syntax errors") {
    error_of<SyntaxError>("coords: x y;");
    error_of<SyntaxError>("coords: x, y; map: x = x, y = y");
    error_of<SyntaxError>("coordinates: x, y;");
    error_of<SyntaxError>("coords: x, y; map: x = x +, y = y;");
  }

  TEST_CASE("semantic errors") {
    error_of<SemanticError>("coords: x, x; factors: 1, 1;");
    error_of<SemanticError>("coords: x, y; factors: 1, q;");
    error_of<SemanticError>("coords: x, y;");
    error_of<SemanticError>("coords: x, y; factors: 1, 1; map: a = x, b = y;");
    error_of<SemanticError>("coords: x, y; factors: 1;");
    error_of<SemanticError>("coords: pi, y; factors: 1, 1;");
    error_of<SemanticError>("coords: x, y; range z: (0, 1); factors: 1, 1;");
    error_of<SemanticError>("coords: x, y; range x: (1, 0); factors: 1, 1;");
    error_of<SemanticError>("coords: x, y; range x: (0, y); factors: 1, 1;");
    error_of<SemanticError>("coords: x, y; periodic: x; range x: (0, inf); factors: 1, 1;");
    error_of<SemanticError>("coords: x, y; factors: 1, x^y;");
    error_of<SemanticError>("coords: x, y; factors: 1, 1; potential: V(q);");
    error_of<SemanticError>("coords: x, y; factors: h2 = 1, h1 = 1;");
    error_of<SemanticError>("coords: x, y; coords: x, y; factors: 1, 1;");
    error_of<SemanticError>("coords: u, v; map: x = u, x = v;");
    const auto e = error_of<SemanticError>("coords: x, y;\nfactors: 1, zeta;");
    CHECK(e.position().line == 2);
    CHECK(std::string(e.what()).find("zeta") != std::string::npos);
  }

  TEST_CASE("file errors carry the path") {
    const auto path = std::filesystem::temp_directory_path() / "genquant_broken.gq";
    {
      std::FILE* f = std::fopen(path.c_str(), "w");
      REQUIRE(f != nullptr);
      std::fputs("coords: x, y;\nfactors: 1, (x;\n", f);
      std::fclose(f);
    }
    try {
      load_document(path);
      FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
      CHECK(std::string(e.what()).find("genquant_broken.gq:2:") != std::string::npos);
    }
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_document(systems_dir / "missing.gq"), Error);
  }

  TEST_CASE("periodic coordinates default to a full turn") {
    const auto doc = load_document(systems_dir / "polar2d.gq");
    CHECK(doc.coordinates[1].periodic);
    CHECK(doc.coordinates[1].lo == Expr(0));
    CHECK(doc.coordinates[1].hi == Expr(2) * sym::symbol("pi"));
  }

  TEST_CASE("decimals are exact") {
    const Expr e = parse_expression("0.5*r^2 - 1.25e-1", {"r"});
    CHECK(e == Expr(sym::Rational(1, 2)) * sym::pow(sym::symbol("r"), 2) - Expr(sym::Rational(1, 8)));
    CHECK(parse_expression("-x^2", {"x"}) == -sym::pow(sym::symbol("x"), 2));
    CHECK(parse_expression("2^-1", {}) == Expr(sym::Rational(1, 2)));
  }
}

TEST_SUITE("round trip") {
  TEST_CASE("documents re-serialize to equal documents") {
    for (const auto& name : {"cartesian", "spherical", "cylindrical", "polar2d"}) {
      const auto doc = load_document(systems_dir / (std::string(name) + ".gq"));
      const auto again = parse_document(doc.to_source());
      CHECK_MESSAGE(again == doc, name);
      CHECK(again.to_source() == doc.to_source());
    }
    const auto factors = parse_document("coordsys: f; coords: r, theta; range r: (0, inf); factors: 1, r; potential: -1/r;");
    CHECK(parse_document(factors.to_source()) == factors);
  }

  TEST_CASE("infix text parses back to the same expression") {
    gq::testing::ExprCorpus corpus({"x", "y"}, 4242);
    for (const Expr& e : corpus.take(100)) CHECK(parse_expression(sym::to_infix(e), {"x", "y"}) == e);
    const Expr field = Expr::field("V", {"x", "y"});
    CHECK(parse_expression(sym::to_infix(field), {"x", "y"}) == field);
  }
}

TEST_SUITE("render") {
  TEST_CASE("spherical operator in LaTeX") {
    const auto doc = load_document(systems_dir / "spherical.gq");
    const auto op = quantize::hamilton_operator(doc.system(), *doc.potential);
    Report report;
    report.equations.push_back(operator_equation(op));
    const auto latex = render(report, Format::Latex);
    CHECK(latex.find("\\frac{1}{r^2} \\frac{\\partial}{\\partial r}\\left(r^2 \\frac{\\partial}{\\partial r}\\right)") !=
          std::string::npos);
    CHECK(latex.find("\\begin{align*}") != std::string::npos);
  }

  TEST_CASE("empty check list is valid JSON") {
    Report report;
    report.command = "verify";
    report.system = "s";
    const auto j = nlohmann::json::parse(render(report, Format::Json));
    CHECK(j.at("schema") == 1);
    CHECK(j.at("checks").is_array());
    CHECK(j.at("checks").empty());
    CHECK(j.at("spectra").empty());
    CHECK(j.at("deltas").empty());
  }

  TEST_CASE("diagonal spectrum gives three single levels") {
    numeric::SparseMatrix a(3, 3);
    a.insert(0, 0) = 1;
    a.insert(1, 1) = 2;
    a.insert(2, 2) = 3;
    numeric::DiscreteOperator op;
    op.matrix = a;
    const auto spectrum = numeric::eigen_spectrum(op, 3);
    Report report;
    report.command = "spectrum";
    report.system = "diag";
    for (const auto& c : spectrum.clusters) report.spectra.push_back({c.value, c.multiplicity, ""});
    const auto j = nlohmann::json::parse(render(report, Format::Json));
    REQUIRE(j.at("spectra").size() == 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(j["spectra"][i]["multiplicity"] == 1);
      CHECK(j["spectra"][i]["value"].get<double>() == doctest::Approx(i + 1));
    }
  }

  TEST_CASE("check fields and status strings") {
    Report report;
    report.checks = {{"a", true, 0.0, ""}, {"b", false, 0.5, "why"}};
    const auto j = nlohmann::json::parse(render(report, Format::Json));
    CHECK(j["checks"][0]["status"] == "pass");
    CHECK(j["checks"][1]["status"] == "fail");
    CHECK(j["checks"][1]["residual"] == 0.5);
    CHECK(j["passed"] == false);
    CHECK_FALSE(report.passed());
    const auto text = render(report, Format::Text);
    CHECK(text.find("FAIL") != std::string::npos);
  }

  TEST_CASE("numbers are rounded to ten significant digits") {
    CHECK(report_precision(1.23456789012345) == 1.234567890);
    CHECK(report_precision(0.0) == 0.0);
    CHECK(format_from_name("json") == Format::Json);
    CHECK_FALSE(format_from_name("yaml").has_value());
  }
}

TEST_SUITE("commands") {
  TEST_CASE("every shipped document verifies") {
    for (const auto& name : {"cartesian", "spherical", "cylindrical", "polar2d"}) {
      const auto report = run("verify", {name});
      CHECK_MESSAGE(report.passed(), name);
      CHECK(exit_code(report) == 0);
      CHECK(report.checks.size() >= 6);
    }
  }

  TEST_CASE("derive lists every stage") {
    const auto report = run("derive", {"spherical"}, "V(r)");
    std::vector<std::string> names;
    for (const auto& e : report.equations) names.push_back(e.name);
    for (const auto* expected : {"scale factor", "coordinate Jacobian", "momentum Jacobian", "Christoffel symbol",
                                 "classical Hamiltonian", "Liouville equation", "density equation",
                                 "Hamilton operator", "Schroedinger equation"}) {
      CHECK_MESSAGE(std::find(names.begin(), names.end(), expected) != names.end(), expected);
    }
    const auto cart = run("derive", {"cartesian"});
    bool zero_gamma = false;
    for (const auto& e : cart.equations) zero_gamma = zero_gamma || (e.lhs_text == "Gamma" && e.rhs_text == "0");
    CHECK(zero_gamma);
  }

  TEST_CASE("potentials may use the target chart") {
    const auto doc = load_document(systems_dir / "spherical.gq");
    const Expr v = document_potential(doc, "x^2 + y^2 + z^2");
    CHECK(v == sym::pow(sym::symbol("r"), 2));
    CHECK_THROWS_AS(document_potential(doc, "q*r"), SemanticError);
  }

  TEST_CASE("spectrum and compare") {
    CommandOptions options;
    options.command = "spectrum";
    options.documents = {load_document(systems_dir / "polar2d.gq")};
    options.potential = "0.5*r^2";
    const auto report = run_command(options);
    CHECK(report.passed());
    REQUIRE(report.spectra.size() == 4);
    CHECK(report.spectra[1].multiplicity == 2);

    options.command = "compare";
    options.documents.push_back(options.documents.front());
    const auto same = run_command(options);
    CHECK(same.passed());
    for (double d : same.deltas) CHECK(d == 0.0);
    options.documents.pop_back();
    CHECK_THROWS_AS(run_command(options), Error);
    options.command = "integrate";
    CHECK_THROWS_AS(run_command(options), Error);
  }

  TEST_CASE("json output is byte-stable") {
    const auto first = render(run("verify", {"spherical"}), Format::Json);
    const auto second = render(run("verify", {"spherical"}), Format::Json);
    CHECK(first == second);
    const auto j = nlohmann::json::parse(first);
    CHECK(j.at("system") == "spherical");
    for (const auto& check : j.at("checks")) {
      CHECK(check.contains("name"));
      CHECK(check.contains("status"));
      CHECK(check.contains("residual"));
    }
  }
}

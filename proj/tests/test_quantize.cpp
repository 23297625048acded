#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "genquant/coords/builtin.hpp"
#include "genquant/coords/geometry.hpp"
#include "genquant/error.hpp"
#include "genquant/quantize/quantize.hpp"

using namespace gq;
using namespace gq::sym;

namespace {

const Expr r = symbol("r");
const Expr theta = symbol("theta");
const Expr hbar = symbol("hbar");
const Expr m = symbol("m");
const Expr I = imaginary_unit();

quantize::DensityEquation density_of(const coords::CoordinateSystem& cs, const Expr& v) {
  return quantize::wigner_transform(classical::liouville_equation(classical::classical_hamiltonian(cs, v)), cs);
}

// Flat parabolic coordinates given only through their scale factors.
coords::CoordinateSystem parabolic() {
  const Expr h = sqrt(pow(symbol("sigma"), 2) + pow(symbol("tau"), 2));
  const std::vector<coords::Coordinate> c{{"sigma", {0.0, HUGE_VAL}}, {"tau", {0.0, HUGE_VAL}}};
  return coords::CoordinateSystem::from_scale_factors("parabolic", c, {h, h});
}

// A curved surface metric; no flat embedding exists.
coords::CoordinateSystem warped() {
  const std::vector<coords::Coordinate> c{{"u", {0.0, 1.0}}, {"w", {0.0, 1.0}}};
  return coords::CoordinateSystem::from_scale_factors(
      "warped", c, {Expr(1) + pow(symbol("w"), 2), Expr(2) + symbol("u") * symbol("w")});
}

}  // namespace

TEST_SUITE("wigner transform") {
  TEST_CASE("cartesian density equation has no correction terms") {
    const auto cs = coords::cartesian();
    const Expr V = Expr::field("V", cs.names());
    const auto eq = density_of(cs, V);
    CHECK(eq.rhs_coefficient == I * hbar);
    const Expr rho = eq.density();
    Expr expected(0);
    for (const std::string x : {"x", "y", "z"}) {
      const std::string dx = "delta_" + x;
      expected += -pow(hbar, 2) / m * differentiate(differentiate(rho, x), dx) +
                  symbol(dx) * differentiate(V, x) * rho;
    }
    CHECK(expand(eq.lhs()) == expand(expected));
    CHECK(eq.rhs() == I * hbar * differentiate(rho, "t"));
  }

  TEST_CASE("spherical density equation") {
    const auto cs = coords::spherical();
    const Expr V = Expr::field("V", {"r"});
    const auto eq = density_of(cs, V);
    const Expr rho = eq.density();
    auto d = [&](const Expr& e, const std::string& v) { return differentiate(e, v); };
    const Expr st = sin(theta), s2 = pow(sin(theta), 2);
    const Expr dr = symbol("delta_r"), dth = symbol("delta_theta");
    const Expr transcription =
        -pow(hbar, 2) / m *
            (pow(r, -2) * d(pow(r, 2) * d(rho, "delta_r"), "r") + Expr(1) / (pow(r, 2) * st) * d(st * d(rho, "delta_theta"), "theta") +
             Expr(1) / (pow(r, 2) * s2) * d(d(rho, "phi"), "delta_phi")) +
        pow(hbar, 2) / m *
            (dr / pow(r, 3) * d(d(rho, "delta_theta"), "delta_theta") +
             dr / (pow(r, 3) * s2) * d(d(rho, "delta_phi"), "delta_phi") +
             dth * cot(theta) / (pow(r, 2) * s2) * d(d(rho, "delta_phi"), "delta_phi")) +
        dr * d(V, "r") * rho;
    CHECK(equivalent(eq.lhs(), transcription, 1e-9, cs.sample_domain()));
  }

  TEST_CASE("cubic momenta are unsupported") {
    const auto cs = coords::cartesian();
    auto h = classical::classical_hamiltonian(cs, Expr(0));
    h.kinetic = pow(symbol("p_x"), 4) / m;
    CHECK_THROWS_AS(quantize::wigner_transform(classical::liouville_equation(h), cs), UnsupportedHamiltonianError);
  }
}

TEST_SUITE("amplitude expansion") {
  TEST_CASE("spherical theta-theta coefficient") {
    const auto cs = coords::spherical();
    const auto a = quantize::amplitude_expansion(cs);
    const Expr R = a.R;
    const Expr expected = R / Expr(4) * (differentiate(R, "theta", 2) + r * differentiate(R, "r")) -
                          pow(differentiate(R, "theta"), 2) / Expr(4);
    CHECK(equivalent(a.monomial_coefficient(1, 1), expected, 1e-9, cs.sample_domain()));
  }

  TEST_CASE("cartesian coefficients are a pure Hessian") {
    const auto a = quantize::amplitude_expansion(coords::cartesian());
    const std::vector<std::string> xs{"x", "y", "z"};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const auto& xi = xs[static_cast<std::size_t>(i)];
        const auto& xj = xs[static_cast<std::size_t>(j)];
        const Expr q = a.R / Expr(4) * differentiate(differentiate(a.R, xi), xj) -
                       differentiate(a.R, xi) * differentiate(a.R, xj) / Expr(4);
        CHECK(expand(a.quadratic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) == expand(q));
      }
    }
  }

  TEST_CASE("cylindrical phi-phi coefficient carries the rho correction") {
    const auto cs = coords::cylindrical();
    const auto a = quantize::amplitude_expansion(cs);
    const Expr rho = symbol("rho");
    const Expr expected = a.R / Expr(4) * (differentiate(a.R, "phi", 2) + rho * differentiate(a.R, "rho")) -
                          pow(differentiate(a.R, "phi"), 2) / Expr(4);
    CHECK(equivalent(a.monomial_coefficient(1, 1), expected, 1e-9, cs.sample_domain()));
  }

  TEST_CASE("degree zero is R squared") {
    for (const auto& cs : {coords::cartesian(), coords::spherical(), coords::polar2d()}) {
      const auto a = quantize::amplitude_expansion(cs);
      CHECK(a.constant == pow(a.R, 2));
      const auto orders = a.truncated_density(2);
      CHECK(orders.sum_of_order(0) == pow(a.R, 2));
      CHECK_FALSE(orders.discarded.empty());
    }
  }

  TEST_CASE("quadratic table is symmetric") {
    const auto a = quantize::amplitude_expansion(coords::spherical());
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) CHECK(a.quadratic[i][j] == a.quadratic[j][i]);
    }
  }
}

TEST_SUITE("madelung") {
  TEST_CASE("plane wave in cartesian coordinates") {
    const auto cs = coords::cartesian();
    const auto density = density_of(cs, Expr(0));
    const auto split = quantize::madelung_collect(density, quantize::amplitude_expansion(cs), cs, Expr(0));
    const Expr E = symbol("E");
    const Expr kx = symbol("k_x"), ky = symbol("k_y"), kz = symbol("k_z");
    const Expr S = kx * symbol("x") + ky * symbol("y") + kz * symbol("z") - E * symbol("t");
    auto plane = [&](const Expr& e) { return simplify(substitute_field(substitute_field(e, "R", Expr(1)), "S", S)); };
    CHECK(expand(plane(split.bracket)) == expand(-E + (pow(kx, 2) + pow(ky, 2) + pow(kz, 2)) / (Expr(2) * m)));
    CHECK(plane(split.continuity_equation).is_zero());
    for (const auto& g : split.gradient) CHECK(plane(g).is_zero());
  }

  TEST_CASE("spherical split matches the continuity and bracket forms") {
    const auto cs = coords::spherical();
    const Expr V = Expr::field("V", {"r"});
    const auto split = quantize::madelung_collect(density_of(cs, V), quantize::amplitude_expansion(cs), cs, V);
    const auto op = quantize::hamilton_operator(cs, V);
    const Expr R = quantize::amplitude_field(cs), S = quantize::phase_field(cs);
    Expr grad_s_squared(0);
    for (int i = 0; i < 3; ++i) {
      grad_s_squared += pow(differentiate(S, cs.names()[static_cast<std::size_t>(i)]) / cs.scale_factor(i), 2);
    }
    const Expr bracket = differentiate(S, "t") + grad_s_squared / (Expr(2) * m) + V -
                         pow(hbar, 2) / (Expr(2) * m * R) * op.laplacian(R);
    CHECK(equivalent(split.bracket, bracket, 1e-9, cs.sample_domain()));

    const Expr J = pow(r, 2) * sin(theta);
    Expr divergence(0);
    for (int i = 0; i < 3; ++i) {
      const std::string u = cs.names()[static_cast<std::size_t>(i)];
      divergence += differentiate(J / pow(cs.scale_factor(i), 2) * pow(R, 2) / m * differentiate(S, u), u);
    }
    const Expr continuity = differentiate(pow(R, 2), "t") + divergence / J;
    CHECK(equivalent(split.continuity_equation, continuity, 1e-9, cs.sample_domain()));
    CHECK_FALSE(contains_symbol(split.continuity_equation, "hbar"));
    CHECK(split.max_residual < 1e-9);
  }

  TEST_CASE("gradient entries are derivatives of the bracket") {
    const auto cs = coords::polar2d();
    const Expr V = quantize::symbolic_potential(cs);
    const auto split = quantize::madelung_collect(density_of(cs, V), quantize::amplitude_expansion(cs), cs, V);
    REQUIRE(split.gradient.size() == 2);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(equivalent(split.gradient[j], differentiate(split.bracket, cs.names()[j]), 1e-9, cs.sample_domain()));
    }
    const Expr hj = split.hj_equation();
    CHECK(contains_symbol(hj, "delta_r"));
    CHECK(contains_symbol(hj, "delta_theta"));
  }
}

TEST_SUITE("operator") {
  TEST_CASE("spherical operator acting on a test field") {
    const auto cs = coords::spherical();
    const Expr V = Expr::field("V", {"r"});
    const auto op = quantize::hamilton_operator(cs, V);
    const Expr psi = Expr::field("psi", {"r", "theta", "phi"});
    auto d = [](const Expr& e, const std::string& v) { return differentiate(e, v); };
    const Expr expected =
        -pow(hbar, 2) / (Expr(2) * m) *
            (pow(r, -2) * d(pow(r, 2) * d(psi, "r"), "r") +
             Expr(1) / (pow(r, 2) * sin(theta)) * d(sin(theta) * d(psi, "theta"), "theta") +
             Expr(1) / (pow(r, 2) * pow(sin(theta), 2)) * d(d(psi, "phi"), "phi")) +
        V * psi;
    CHECK(equivalent(op.apply(psi), expected, 1e-9, cs.sample_domain()));
    CHECK(op.prefactor == -pow(hbar, 2) / (Expr(2) * m));
  }

  TEST_CASE("flux coefficients times h_i^2 give the Jacobian") {
    for (const auto& cs : {coords::cartesian(), coords::spherical(), coords::cylindrical(), coords::polar2d(), warped()}) {
      const auto op = quantize::hamilton_operator(cs, Expr(0));
      for (const auto& term : op.kinetic) {
        CHECK(simplify(term.flux * pow(cs.scale_factor(term.axis), 2)) == op.jacobian);
        CHECK(simplify(term.outer * op.jacobian).is_one());
        CHECK(equivalent(term.reduced_outer * term.reduced_flux, term.outer * term.flux, 1e-9, cs.sample_domain()));
      }
    }
  }

  TEST_CASE("cartesian operator is the flat Laplacian") {
    const auto cs = coords::cartesian();
    const Expr V = Expr::field("V", cs.names());
    const auto op = quantize::hamilton_operator(cs, V);
    const Expr psi = Expr::field("psi", cs.names());
    Expr lap(0);
    for (const std::string x : {"x", "y", "z"}) lap += differentiate(psi, x, 2);
    CHECK(op.apply(psi) == -pow(hbar, 2) / (Expr(2) * m) * lap + V * psi);
    const Expr r2 = pow(symbol("x"), 2) + pow(symbol("y"), 2) + pow(symbol("z"), 2);
    CHECK(op.laplacian(r2) == Expr(6));
  }

  TEST_CASE("spherical and cylindrical Laplacians") {
    CHECK(quantize::hamilton_operator(coords::spherical(), Expr(0)).laplacian(pow(r, 2)) == Expr(6));
    const auto cyl = quantize::hamilton_operator(coords::cylindrical(), Expr(0));
    const Expr rho = symbol("rho");
    const Expr psi = Expr::field("psi", {"rho", "phi", "z"});
    const Expr expected = Expr(1) / rho * differentiate(rho * differentiate(psi, "rho"), "rho") +
                          pow(rho, -2) * differentiate(psi, "phi", 2) + differentiate(psi, "z", 2);
    CHECK(equivalent(cyl.laplacian(psi), expected, 1e-9, coords::cylindrical().sample_domain()));
  }
}

TEST_SUITE("consistency") {
  TEST_CASE("operator and Madelung paths agree") {
    for (const auto& cs : {coords::cartesian(), coords::spherical(), coords::cylindrical(), coords::polar2d(), parabolic()}) {
      const auto report = quantize::verify_consistency(cs, quantize::symbolic_potential(cs));
      CHECK_MESSAGE(report.passed(), cs.name());
      CHECK(report.parts.size() >= 2);
      for (const auto& part : report.parts) CHECK_MESSAGE(part.residual < 1e-9, cs.name(), " ", part.name);
    }
  }

  TEST_CASE("curvature breaks the degree-one split") {
    const auto cs = warped();
    const Expr V = quantize::symbolic_potential(cs);
    CHECK_THROWS_AS(quantize::madelung_collect(density_of(cs, V), quantize::amplitude_expansion(cs), cs, V),
                    SplitFailureError);
  }

  TEST_CASE("a wrong split is reported rather than thrown") {
    const auto cs = coords::cartesian();
    const Expr V = quantize::symbolic_potential(cs);
    auto split = quantize::madelung_collect(density_of(cs, V), quantize::amplitude_expansion(cs), cs, V);
    split.bracket = split.bracket + Expr(1);
    const auto report = quantize::verify_consistency(cs, V, split);
    CHECK_FALSE(report.passed());
  }
}

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#define DOCTEST_CONFIG_DISABLE

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "genquant/classical/classical.hpp"
#include "genquant/cli/commands.hpp"
#include "genquant/coords/builtin.hpp"
#include "genquant/coords/geometry.hpp"
#include "genquant/numeric/spectrum.hpp"
#include "genquant/quantize/quantize.hpp"

using namespace gq;
using sym::Expr;
using sym::symbol;

namespace {

const Expr r = symbol("r");
const Expr theta = symbol("theta");
const Expr hbar = symbol("hbar");
const Expr m = symbol("m");

struct Outcome {
  bool passed = true;
  std::ostringstream notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      notes << " [failed: " << what << "]";
    }
  }
};

Expr d(const Expr& e, const std::string& v) { return sym::differentiate(e, v); }

bool same(const Expr& a, const Expr& b, const sym::SampleDomain& domain) {
  return sym::equivalent(a, b, 1e-9, domain);
}

void golden_chain(Outcome& out) {
  const auto doc = cli::load_document(std::filesystem::path(GENQUANT_SYSTEMS_DIR) / "spherical.gq");
  cli::CommandOptions options;
  options.command = "derive";
  options.documents = {doc};
  options.potential = "V(r)";
  const auto report = cli::run_command(options);
  out.require(report.equations.size() > 10, "derive emitted every stage");

  const auto cs = doc.system();
  const auto domain = cs.sample_domain();
  const Expr V = Expr::field("V", {"r"});
  const Expr s2 = sym::pow(sym::sin(theta), 2);
  const Expr p_r = symbol("p_r"), p_theta = symbol("p_theta"), p_phi = symbol("p_phi");

  // Liouville equation in spherical coordinates.
  const auto h = classical::classical_hamiltonian(cs, V);
  const auto liouville = classical::liouville_equation(h);
  const Expr F = Expr::field("F", liouville.variables());
  const Expr liouville_golden =
      d(F, "t") + p_r / m * d(F, "r") + p_theta / (m * sym::pow(r, 2)) * d(F, "theta") +
      p_phi / (m * sym::pow(r, 2) * s2) * d(F, "phi") -
      (d(V, "r") - sym::pow(p_theta, 2) / (m * sym::pow(r, 3)) - sym::pow(p_phi, 2) / (m * sym::pow(r, 3) * s2)) *
          d(F, "p_r") +
      sym::pow(p_phi, 2) / (m * sym::pow(r, 2) * s2) * sym::cot(theta) * d(F, "p_theta");
  out.require(same(liouville.lhs(), liouville_golden, domain), "Liouville equation");

  // Momentum Jacobian.
  const Expr jp = coords::jacobians(cs).momentum;
  out.require(same(jp, Expr(1) / (sym::pow(r, 2) * sym::sin(theta)), domain), "momentum Jacobian");

  // Density equation.
  const auto density = quantize::wigner_transform(liouville, cs);
  const Expr rho = density.density();
  const Expr st = sym::sin(theta);
  const Expr dr = symbol("delta_r"), dth = symbol("delta_theta");
  const Expr density_golden =
      -sym::pow(hbar, 2) / m *
          (sym::pow(r, -2) * d(sym::pow(r, 2) * d(rho, "delta_r"), "r") +
           Expr(1) / (sym::pow(r, 2) * st) * d(st * d(rho, "delta_theta"), "theta") +
           Expr(1) / (sym::pow(r, 2) * s2) * d(d(rho, "phi"), "delta_phi")) +
      sym::pow(hbar, 2) / m *
          (dr / sym::pow(r, 3) * d(d(rho, "delta_theta"), "delta_theta") +
           dr / (sym::pow(r, 3) * s2) * d(d(rho, "delta_phi"), "delta_phi") +
           dth * sym::cot(theta) / (sym::pow(r, 2) * s2) * d(d(rho, "delta_phi"), "delta_phi")) +
      dr * d(V, "r") * rho;
  out.require(same(density.lhs(), density_golden, domain), "density equation");
  out.require(density.rhs_coefficient == sym::imaginary_unit() * hbar, "i hbar on the right");

  // Coefficient of delta_theta^2 in the amplitude expansion.
  const auto amplitude = quantize::amplitude_expansion(cs);
  const Expr R = amplitude.R;
  const Expr theta_theta = R / Expr(4) * (d(d(R, "theta"), "theta") + r * d(R, "r")) - sym::pow(d(R, "theta"), 2) / Expr(4);
  out.require(same(amplitude.monomial_coefficient(1, 1), theta_theta, domain), "delta_theta^2 coefficient");

  // Operator acting on a test field.
  const auto op = quantize::hamilton_operator(cs, V);
  const Expr psi = Expr::field("psi", {"r", "theta", "phi"});
  const Expr operator_golden =
      -sym::pow(hbar, 2) / (Expr(2) * m) *
          (sym::pow(r, -2) * d(sym::pow(r, 2) * d(psi, "r"), "r") +
           Expr(1) / (sym::pow(r, 2) * st) * d(st * d(psi, "theta"), "theta") +
           Expr(1) / (sym::pow(r, 2) * s2) * d(d(psi, "phi"), "phi")) +
      V * psi;
  out.require(same(op.apply(psi), operator_golden, domain), "operator");
}

void cartesian_degeneracy(Outcome& out) {
  const auto cs = coords::cartesian();
  const Expr V = Expr::field("V", cs.names());
  out.require(coords::christoffel(cs).all_zero(), "Christoffel table is zero");

  const auto density =
      quantize::wigner_transform(classical::liouville_equation(classical::classical_hamiltonian(cs, V)), cs);
  const Expr rho = density.density();
  Expr flat(0);
  for (const std::string x : {"x", "y", "z"}) {
    flat += -sym::pow(hbar, 2) / m * d(d(rho, x), "delta_" + x) + symbol("delta_" + x) * d(V, x) * rho;
  }
  out.require(sym::expand(density.lhs()) == sym::expand(flat), "density equation without corrections");

  const auto amplitude = quantize::amplitude_expansion(cs);
  bool pure_hessian = true;
  const std::vector<std::string> xs{"x", "y", "z"};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const Expr q = amplitude.R / Expr(4) * d(d(amplitude.R, xs[i]), xs[j]) -
                     d(amplitude.R, xs[i]) * d(amplitude.R, xs[j]) / Expr(4);
      pure_hessian = pure_hessian && sym::expand(amplitude.quadratic[i][j]) == sym::expand(q);
    }
  }
  out.require(pure_hessian, "amplitude expansion is a pure Hessian");

  const auto op = quantize::hamilton_operator(cs, V);
  const Expr psi = Expr::field("psi", cs.names());
  Expr laplacian(0);
  for (const auto& x : xs) laplacian += d(d(psi, x), x);
  out.require(op.apply(psi) == -sym::pow(hbar, 2) / (Expr(2) * m) * laplacian + V * psi, "flat Laplacian plus V");
}

void madelung_cross_check(Outcome& out) {
  double worst = 0.0;
  for (const auto& cs : {coords::cartesian(), coords::spherical(), coords::cylindrical(), coords::polar2d()}) {
    const auto report = quantize::verify_consistency(cs, quantize::symbolic_potential(cs));
    out.require(report.passed(), cs.name());
    for (const auto& part : report.parts) worst = std::max(worst, part.residual);
  }
  out.require(worst < 1e-9, "residuals below 1e-9");
  out.notes << " max residual " << worst;
}

void operator_covariance(Outcome& out) {
  const Expr x = symbol("x"), y = symbol("y"), z = symbol("z");
  const auto cart = coords::cartesian();
  const auto sph = coords::spherical();
  const auto gauss = numeric::covariance_check(cart, sph, Expr(0), sym::exp(-(x * x + y * y + z * z)), 100);
  const auto linear = numeric::covariance_check(cart, sph, Expr(0), z, 100);
  out.require(gauss.points == 100 && linear.points == 100, "100 points each");
  out.require(gauss.max_relative_deviation < 1e-9, "exp(-r^2)");
  out.require(linear.max_relative_deviation < 1e-9, "r cos(theta)");
  out.notes << " max deviation " << std::max(gauss.max_relative_deviation, linear.max_relative_deviation);
}

void oscillator_spectra(Outcome& out) {
  numeric::SpectrumOptions options;  // 40 nodes per axis, box radius 7
  const auto result =
      numeric::compare_spectra(coords::cartesian(), coords::spherical(), r * r / Expr(2), 0.02, options);
  const int expected_multiplicity[4] = {1, 3, 6, 10};
  for (const auto* report : {&result.a, &result.b}) {
    out.require(report->clusters.size() == 4, report->system + " has 4 levels");
    for (std::size_t n = 0; n < std::min<std::size_t>(4, report->clusters.size()); ++n) {
      const double exact = static_cast<double>(n) + 1.5;
      const auto& c = report->clusters[n];
      out.require(std::abs(c.value - exact) / exact < 0.02, report->system + " level " + std::to_string(n));
      out.require(c.multiplicity == expected_multiplicity[n], report->system + " multiplicity " + std::to_string(n));
      out.notes << " " << report->system << "[" << n << "]=" << c.value << "x" << c.multiplicity;
    }
  }
  out.require(!result.structural_mismatch && result.passed, "cross-system deltas below 2%");
  double worst = 0.0;
  for (double v : result.deltas) worst = std::max(worst, v);
  out.notes << " max delta " << worst;
}

// Radial problem for angular momentum l on a log grid, as the reduction builds it.
numeric::DiscreteOperator radial_coulomb(int l, int shift) {
  quantize::HamiltonOperator op;
  op.coordinates = {"r"};
  op.kinetic = {{0, "r", sym::pow(r, -2), sym::pow(r, 2), sym::pow(r, -2), sym::pow(r, 2)}};
  op.prefactor = -sym::pow(hbar, 2) / (Expr(2) * m);
  op.jacobian = sym::pow(r, 2);
  op.potential = -Expr(1) / r + Expr(l * (l + 1)) / (Expr(2) * sym::pow(r, 2)) + Expr(shift);
  const numeric::Grid grid(
      {numeric::AxisSpec{"r", 0.01, 40, 400, numeric::Edge::ZeroFlux, numeric::Edge::Dirichlet,
                         numeric::Spacing::Logarithmic}});
  return numeric::discretize(op, grid);
}

void coulomb(Outcome& out) {
  const auto sph = coords::spherical();
  numeric::SpectrumOptions options;
  options.radial_spacing = numeric::Spacing::Logarithmic;
  options.radial_nodes = 400;
  options.radial_min = 0.01;
  options.radial_max = 40;
  options.levels = 1;
  const auto v = numeric::resolve_potential(sph, -Expr(1) / r, {sph});
  const auto report = numeric::level_spectrum(sph, v, numeric::default_plan(sph, v, options), options);
  const double ground = report.clusters.empty() ? std::nan("") : report.clusters.front().value;
  out.require(std::abs(ground + 0.5) / 0.5 < 0.05, "ground state within 5% of -0.5");
  out.notes << " E1=" << ground;

  const auto cross = numeric::compare_spectra(coords::cartesian(), sph, -Expr(1) / r, 0.05, options);
  const double cartesian_ground = cross.a.clusters.empty() ? std::nan("") : cross.a.clusters.front().value;
  out.require(std::abs(cartesian_ground + 0.5) / 0.5 < 0.05, "cartesian ground state within 5% of -0.5");
  out.require(cross.passed, "cartesian and log-radial ground states agree within 5%");
  out.notes << " cartesian E1=" << cartesian_ground;

  // Shift by c = +1: the same grid and channels, every eigenvalue compared.
  double worst = 0.0;
  double allowed = 0.0;
  for (int l = 0; l <= 2; ++l) {
    const auto base = numeric::eigen_spectrum(radial_coulomb(l, 0), 12);
    const auto shifted_op = radial_coulomb(l, 1);
    const auto shifted = numeric::eigen_spectrum(shifted_op, 12);
    const double bound = 64 * std::numeric_limits<double>::epsilon() * shifted_op.norm_bound;
    allowed = std::max(allowed, bound);
    for (std::size_t i = 0; i < base.eigenvalues.size(); ++i) {
      const double err = std::abs(shifted.eigenvalues[i] - base.eigenvalues[i] - 1.0);
      worst = std::max(worst, err);
      out.require(err <= bound, "shift of level " + std::to_string(i) + " for l=" + std::to_string(l));
    }
  }
  out.notes << " shift error " << worst << " (bound 64 eps |A| = " << allowed << ")";
}

void property_suites(Outcome& out) {
  sym::set_default_seed(sym::kDefaultSeed);
  for (const auto& cs : {coords::cartesian(), coords::spherical(), coords::cylindrical(), coords::polar2d()}) {
    const auto jac = coords::jacobians(cs);
    out.require(sym::simplify(jac.coordinate * jac.momentum).is_one(), "reciprocity in " + cs.name());
  }

  const classical::PhaseSpace plane{{"u", "w"}, {"p_u", "p_w"}};
  gq::testing::ExprCorpus poisson_corpus({"u", "w", "p_u", "p_w"}, sym::kDefaultSeed);
  const auto items = poisson_corpus.take(50, 2);
  int poisson_failures = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Expr& f = items[i];
    const Expr& g = items[(i + 1) % items.size()];
    const Expr& k = items[(i + 2) % items.size()];
    const Expr anti = classical::poisson_bracket(f, g, plane) + classical::poisson_bracket(g, f, plane);
    const Expr leibniz = classical::poisson_bracket(f, g * k, plane) - g * classical::poisson_bracket(f, k, plane) -
                         classical::poisson_bracket(f, g, plane) * k;
    if (!sym::expand(anti).is_zero() || !sym::expand(leibniz).is_zero()) ++poisson_failures;
  }
  out.require(poisson_failures == 0, "Poisson antisymmetry and Leibniz");

  numeric::SpectrumOptions options;
  options.nodes = 8;
  options.allow_reduction = false;
  for (const auto& cs : {coords::cartesian(), coords::spherical(), coords::cylindrical(), coords::polar2d()}) {
    const auto v = numeric::resolve_potential(cs, Expr(0), {cs});
    const auto a = numeric::discretize(quantize::hamilton_operator(cs, Expr(0)),
                                       numeric::Grid(numeric::default_plan(cs, v, options).axes), options.units, v.fn);
    out.require(numeric::asymmetry(a.matrix) == 0.0, "symmetric operator in " + cs.name());
  }

  const Expr x = symbol("x");
  auto line = [&](const Expr& v) {
    quantize::HamiltonOperator op;
    op.coordinates = {"x"};
    op.kinetic = {{0, "x", 1, 1, 1, 1}};
    op.prefactor = -sym::pow(hbar, 2) / (Expr(2) * m);
    op.potential = v;
    op.jacobian = 1;
    return op;
  };
  double box_prev = std::numeric_limits<double>::infinity();
  double osc_prev = std::numeric_limits<double>::infinity();
  for (int n : {50, 100, 200, 400}) {
    const auto box = numeric::eigen_spectrum(numeric::discretize(line(Expr(0)), numeric::Grid({numeric::AxisSpec{"x", 0, 1, n}})), 1);
    const auto osc =
        numeric::eigen_spectrum(numeric::discretize(line(x * x / Expr(2)), numeric::Grid({numeric::AxisSpec{"x", -8, 8, n}})), 1);
    const double box_err = std::abs(box.eigenvalues[0] - M_PI * M_PI / 2);
    const double osc_err = std::abs(osc.eigenvalues[0] - 0.5);
    out.require(box_err < box_prev && osc_err < osc_prev, "refinement at n=" + std::to_string(n));
    box_prev = box_err;
    osc_prev = osc_err;
  }

  gq::testing::ExprCorpus simplify_corpus({"x", "y", "r"}, sym::kDefaultSeed);
  int unstable = 0;
  for (const Expr& e : simplify_corpus.take(100)) {
    const Expr once = sym::simplify(e);
    if (sym::to_prefix(sym::simplify(once)) != sym::to_prefix(once)) ++unstable;
  }
  out.require(unstable == 0, "simplifier idempotence");
}

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;  // 0: no runtime limit
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "spherical golden chain", 10, golden_chain},
      {2, "cartesian degeneracy", 0, cartesian_degeneracy},
      {3, "Madelung cross-check in four systems", 30, madelung_cross_check},
      {4, "operator covariance, cartesian vs spherical", 0, operator_covariance},
      {5, "oscillator spectrum, 40^3 cartesian vs spherical reduction", 60, oscillator_spectra},
      {6, "Coulomb ground state and reference-level shift", 0, coulomb},
      {7, "property suites with the default seed", 0, property_suites},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.passed = false;
      out.notes << " [error: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds > c.budget_seconds) {
      out.passed = false;
      out.notes << " [over the " << c.budget_seconds << " s budget]";
    }
    all = all && out.passed;
    std::printf("criterion %d %s: %s (%.2f s)%s\n", c.number, out.passed ? "PASS" : "FAIL", c.name.c_str(), seconds,
                out.notes.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}

#include "genquant/error.hpp"
#include "genquant/quantize/quantize.hpp"
#include "genquant/symcore/equivalence.hpp"

namespace gq::quantize {

using classical::kHbar;
using classical::kTime;

bool ConsistencyReport::passed() const {
  for (const auto& p : parts) {
    if (!p.passed) return false;
  }
  return !parts.empty();
}

namespace {

struct ComplexParts {
  Expr real;
  Expr imaginary;
};

// Splits an expanded expression into the terms without and with a factor i.
ComplexParts split_complex(const Expr& e) {
  const Expr I = sym::imaginary_unit();
  std::vector<Expr> re;
  std::vector<Expr> im;
  for (const auto& term : sym::terms_of(sym::expand(e))) {
    bool imaginary = false;
    std::vector<Expr> rest;
    for (const auto& f : sym::factors_of(term)) {
      if (f.is(sym::Kind::Imaginary)) {
        imaginary = true;
      } else {
        rest.push_back(f);
      }
    }
    (imaginary ? im : re).push_back(sym::make_product(std::move(rest)));
  }
  return {sym::make_sum(std::move(re)), sym::make_sum(std::move(im))};
}

ConsistencyPart compare_part(const std::string& name, const Expr& actual, const Expr& expected,
                             const sym::SampleDomain& domain) {
  ConsistencyPart part;
  part.name = name;
  if (sym::contains_imaginary(actual)) {
    part.detail = "non-real remainder: " + sym::to_infix(actual);
    return part;
  }
  try {
    sym::EquivalenceOptions options;
    options.domain = domain;
    const auto result = sym::check_equivalent(actual, expected, options);
    part.passed = result.equivalent;
    part.residual = result.max_residual;
    part.detail = result.canonical ? "canonical match" : "sampled at " + std::to_string(result.points) + " points";
  } catch (const InconclusiveError& e) {
    part.detail = e.what();
  }
  return part;
}

}  // namespace

ConsistencyReport verify_consistency(const coords::CoordinateSystem& cs, const Expr& potential,
                                     const MadelungSplit& split) {
  const Expr I = sym::imaginary_unit();
  const Expr hbar = sym::symbol(kHbar);
  const Expr R = amplitude_field(cs);
  const Expr S = phase_field(cs);
  const Expr phase = I * S / hbar;
  const Expr psi = R * sym::exp(phase);
  const HamiltonOperator op = hamilton_operator(cs, potential);
  const Expr residual = op.apply(psi) - I * hbar * sym::differentiate(psi, kTime);
  const Expr ratio = sym::expand(residual * sym::pow(R, -1) * sym::exp(-phase));
  const ComplexParts parts = split_complex(ratio);

  ConsistencyReport report;
  report.system = cs.name();
  const auto domain = cs.sample_domain();
  report.parts.push_back(compare_part("real part = Hamilton-Jacobi bracket", parts.real, split.bracket, domain));
  const Expr expected_imaginary =
      sym::expand(-(hbar / (Expr(2) * sym::pow(R, 2))) * split.continuity_equation);
  report.parts.push_back(
      compare_part("imaginary part = continuity equation", parts.imaginary, expected_imaginary, domain));
  return report;
}

ConsistencyReport verify_consistency(const coords::CoordinateSystem& cs, const Expr& potential) {
  classical::LiouvilleEquation liouville =
      classical::liouville_equation(classical::classical_hamiltonian(cs, potential));
  const DensityEquation density = wigner_transform(liouville, cs);
  const AmplitudeExpansion amplitude = amplitude_expansion(cs);
  try {
    return verify_consistency(cs, potential, madelung_collect(density, amplitude, cs, potential));
  } catch (const SplitFailureError& e) {
    ConsistencyReport report;
    report.system = cs.name();
    report.parts.push_back({"Madelung split", false, 0.0, std::string(e.what()) + ": " + e.residue()});
    return report;
  }
}

}  // namespace gq::quantize

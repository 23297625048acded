#include <algorithm>

#include "delta_poly.hpp"
#include "genquant/error.hpp"
#include "genquant/quantize/quantize.hpp"
#include "genquant/symcore/equivalence.hpp"

namespace gq::quantize {

using classical::kHbar;
using classical::kMass;
using classical::kTime;
using sym::Rational;

Expr MadelungSplit::hj_equation() const {
  std::vector<Expr> terms;
  for (std::size_t j = 0; j < coordinates.size(); ++j) {
    terms.push_back(sym::symbol(displacements[j]) * sym::differentiate(bracket, coordinates[j]));
  }
  return sym::make_sum(std::move(terms));
}

namespace {

int displacement_index(const std::vector<std::string>& displacements, const std::string& var) {
  auto it = std::find(displacements.begin(), displacements.end(), var);
  return it == displacements.end() ? -1 : static_cast<int>(it - displacements.begin());
}

// Highest degree of rho that can still reach degree `target` after the term
// is applied.
int needed_degree(const sym::DerivTerm& term, const std::vector<std::string>& displacements, int target) {
  int lowering = 0;
  for (const auto& [var, n] : term.orders) {
    if (displacement_index(displacements, var) >= 0) lowering += n;
  }
  int raise = std::numeric_limits<int>::max();
  for (const auto& m : sym::split_monomials(term.coefficient, displacements)) {
    raise = std::min(raise, sym::monomial_degree(m.monomial));
  }
  if (raise == std::numeric_limits<int>::max()) raise = 0;
  return std::max(0, target + lowering - raise);
}

DeltaPoly apply_term(const DeltaPoly& rho, const sym::DerivTerm& term, const std::vector<std::string>& displacements,
                     int max_degree) {
  DeltaPoly p = rho;
  for (const auto& [var, n] : term.orders) {
    const int i = displacement_index(displacements, var);
    for (int k = 0; k < n; ++k) p = i >= 0 ? p.derivative_delta(i) : p.derivative(var);
  }
  DeltaPoly out = p.times(term.coefficient, displacements);
  DeltaPoly truncated(out.dimension(), max_degree);
  for (const auto& [e, c] : out.terms()) truncated.add(e, c);
  return truncated;
}

Expr coefficient_of(const sym::OrderCollection& orders, int degree, const Expr& monomial) {
  auto it = orders.orders.find(degree);
  if (it == orders.orders.end()) return Expr(0);
  for (const auto& t : it->second) {
    if (t.monomial == monomial) return t.coefficient;
  }
  return Expr(0);
}

}  // namespace

MadelungSplit madelung_collect(const DensityEquation& density, const AmplitudeExpansion& amplitude,
                               const coords::CoordinateSystem& cs, const Expr& potential) {
  const auto& deltas = density.displacements;
  if (density.coordinates != amplitude.coordinates || density.coordinates != cs.names()) {
    throw SplitFailureError("density equation and amplitude expansion use different coordinates", "");
  }
  const Expr I = sym::imaginary_unit();
  const Expr hbar = sym::symbol(kHbar);
  const Expr m = sym::symbol(kMass);

  // lhs - i hbar d/dt as one list of terms.
  std::vector<sym::DerivTerm> terms = density.terms;
  terms.push_back({-density.rhs_coefficient, "rho", {{kTime, 1}}});

  int rho_degree = 1;
  for (const auto& t : terms) rho_degree = std::max(rho_degree, needed_degree(t, deltas, 1));
  const DeltaPoly rho = expansion_density(amplitude, rho_degree);

  DeltaPoly total(cs.dimension(), 1);
  for (const auto& t : terms) {
    const DeltaPoly applied = apply_term(rho, t, deltas, 1);
    for (const auto& [e, c] : applied.terms()) total.add(e, c);
  }
  total.expand_coefficients();
  const auto orders = sym::collect_orders(total.to_terms(deltas), 1);

  MadelungSplit split;
  split.coordinates = density.coordinates;
  split.displacements = deltas;
  split.continuity_equation = sym::expand(coefficient_of(orders, 0, Expr(1)) / (-(I * hbar)));
  if (sym::contains_imaginary(split.continuity_equation)) {
    throw SplitFailureError("degree-zero part is not i hbar times a real equation",
                            sym::to_infix(split.continuity_equation));
  }

  const HamiltonOperator op = hamilton_operator(cs, potential);
  const Expr& R = amplitude.R;
  std::vector<Expr> bracket{sym::differentiate(amplitude.S, kTime), potential};
  for (int i = 0; i < cs.dimension(); ++i) {
    bracket.push_back(sym::pow(amplitude.phase_gradient[static_cast<std::size_t>(i)], 2) /
                      (Expr(2) * m * sym::pow(cs.scale_factor(i), 2)));
  }
  bracket.push_back(-(sym::pow(hbar, 2) / (Expr(2) * m * R)) * op.laplacian(R));
  split.bracket = sym::expand(sym::make_sum(std::move(bracket)));

  sym::EquivalenceOptions options;
  options.domain = cs.sample_domain();
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    const Expr c = coefficient_of(orders, 1, sym::symbol(deltas[j]));
    const Expr g = sym::expand(
        (c - amplitude.phase_gradient[j] * split.continuity_equation) * sym::pow(R, -2));
    const Expr expected = sym::differentiate(split.bracket, split.coordinates[j]);
    const auto result = sym::check_equivalent(g, expected, options);
    if (!result.equivalent || sym::contains_imaginary(g)) {
      throw SplitFailureError("degree-one coefficient of " + deltas[j] + " is not the gradient of the bracket",
                              sym::to_infix(sym::expand(g - expected)));
    }
    split.max_residual = std::max(split.max_residual, result.max_residual);
    split.gradient.push_back(g);
  }
  return split;
}

}  // namespace gq::quantize

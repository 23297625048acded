#include "genquant/coords/geometry.hpp"
#include "genquant/quantize/quantize.hpp"
#include "delta_poly.hpp"

namespace gq::quantize {

using classical::kHbar;
using classical::kTime;
using sym::Rational;

namespace {

std::vector<std::string> field_variables(const coords::CoordinateSystem& cs) {
  auto vars = cs.names();
  vars.push_back(kTime);
  return vars;
}

}  // namespace

Expr amplitude_field(const coords::CoordinateSystem& cs) { return Expr::field("R", field_variables(cs)); }
Expr phase_field(const coords::CoordinateSystem& cs) { return Expr::field("S", field_variables(cs)); }

Expr symbolic_potential(const coords::CoordinateSystem& cs) { return Expr::field("V", cs.names()); }

Expr AmplitudeExpansion::monomial_coefficient(int i, int j) const {
  const Expr& q = quadratic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return i == j ? q : Expr(2) * q;
}

Expr AmplitudeExpansion::amplitude_polynomial() const {
  std::vector<Expr> terms{constant};
  const int n = static_cast<int>(coordinates.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      terms.push_back(sym::symbol(displacements[static_cast<std::size_t>(i)]) *
                      sym::symbol(displacements[static_cast<std::size_t>(j)]) *
                      quadratic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  }
  return sym::make_sum(std::move(terms));
}

Expr AmplitudeExpansion::phase_exponent() const {
  std::vector<Expr> terms;
  for (std::size_t k = 0; k < displacements.size(); ++k) {
    terms.push_back(sym::symbol(displacements[k]) * phase_gradient[k]);
  }
  return sym::imaginary_unit() / sym::symbol(kHbar) * sym::make_sum(std::move(terms));
}

sym::OrderCollection AmplitudeExpansion::truncated_density(int order) const {
  // Multiply out to one degree beyond `order` so the report shows what the
  // truncation drops.
  DeltaPoly poly = expansion_density(*this, order + 1);
  return sym::collect_orders(poly.to_terms(displacements), order);
}

AmplitudeExpansion amplitude_expansion(const coords::CoordinateSystem& cs) {
  AmplitudeExpansion a;
  a.coordinates = cs.names();
  for (const auto& u : a.coordinates) a.displacements.push_back(classical::displacement_name(u));
  a.R = amplitude_field(cs);
  a.S = phase_field(cs);
  a.constant = sym::pow(a.R, 2);
  const auto gamma = coords::christoffel(cs);
  const int n = cs.dimension();
  const Expr quarter(Rational(1, 4));
  std::vector<Expr> dR;
  for (const auto& u : a.coordinates) {
    dR.push_back(sym::differentiate(a.R, u));
    a.phase_gradient.push_back(sym::differentiate(a.S, u));
  }
  a.quadratic.assign(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Expr hessian = sym::differentiate(dR[static_cast<std::size_t>(i)], a.coordinates[static_cast<std::size_t>(j)]);
      for (int k = 0; k < n; ++k) hessian -= gamma(k, i, j) * dR[static_cast<std::size_t>(k)];
      a.quadratic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sym::expand(
          quarter * a.R * hessian - quarter * dR[static_cast<std::size_t>(i)] * dR[static_cast<std::size_t>(j)]);
    }
  }
  return a;
}

}  // namespace gq::quantize

#include "genquant/coords/geometry.hpp"
#include "genquant/error.hpp"
#include "genquant/quantize/quantize.hpp"

namespace gq::quantize {

using classical::kHbar;
using classical::kMass;

Expr HamiltonOperator::laplacian(const Expr& psi) const {
  std::vector<Expr> terms;
  for (const auto& k : kinetic) {
    terms.push_back(k.outer * sym::differentiate(k.flux * sym::differentiate(psi, k.coordinate), k.coordinate));
  }
  return sym::make_sum(std::move(terms));
}

Expr HamiltonOperator::apply(const Expr& psi) const { return prefactor * laplacian(psi) + potential * psi; }

HamiltonOperator hamilton_operator(const coords::CoordinateSystem& cs, const Expr& potential) {
  for (const auto& name : cs.names()) {
    if (sym::depends_on(potential, classical::momentum_name(name))) {
      throw InvalidPotentialError("potential " + sym::to_infix(potential) + " depends on a momentum");
    }
  }
  HamiltonOperator op;
  op.coordinates = cs.names();
  op.jacobian = coords::jacobians(cs).coordinate;
  op.prefactor = -(sym::pow(sym::symbol(kHbar), 2) / (Expr(2) * sym::symbol(kMass)));
  op.potential = sym::simplify(potential);
  const Expr outer = sym::pow(op.jacobian, -1);
  for (int i = 0; i < cs.dimension(); ++i) {
    KineticTerm k;
    k.axis = i;
    k.coordinate = op.coordinates[static_cast<std::size_t>(i)];
    k.outer = outer;
    k.flux = sym::simplify(op.jacobian * sym::pow(cs.scale_factor(i), -2));
    std::vector<Expr> moved;
    std::vector<Expr> kept;
    auto [c, rest] = sym::split_coefficient(k.flux);
    moved.emplace_back(c);
    for (const auto& f : sym::factors_of(rest)) {
      (sym::depends_on(f, k.coordinate) ? kept : moved).push_back(f);
    }
    k.reduced_outer = outer * sym::make_product(moved);
    k.reduced_flux = sym::make_product(kept);
    op.kinetic.push_back(std::move(k));
  }
  return op;
}

}  // namespace gq::quantize

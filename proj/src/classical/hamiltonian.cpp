#include "genquant/classical/classical.hpp"

#include "genquant/error.hpp"

namespace gq::classical {

PhaseSpace phase_space(const coords::CoordinateSystem& cs) {
  PhaseSpace space;
  space.coordinates = cs.names();
  for (const auto& u : space.coordinates) space.momenta.push_back(momentum_name(u));
  return space;
}

ClassicalHamiltonian classical_hamiltonian(const coords::CoordinateSystem& cs, const Expr& potential) {
  PhaseSpace space = phase_space(cs);
  for (const auto& p : space.momenta) {
    if (sym::depends_on(potential, p)) {
      throw InvalidPotentialError("potential " + sym::to_infix(potential) + " depends on the momentum " + p);
    }
  }
  const Expr m = sym::symbol(kMass);
  std::vector<Expr> terms;
  for (int i = 0; i < cs.dimension(); ++i) {
    const Expr p = sym::symbol(space.momenta[static_cast<std::size_t>(i)]);
    terms.push_back(sym::pow(p, 2) / (Expr(2) * m * sym::pow(cs.scale_factor(i), 2)));
  }
  return {std::move(space), sym::make_sum(std::move(terms)), sym::simplify(potential), m};
}

Expr poisson_bracket(const Expr& f, const Expr& g, const PhaseSpace& space) {
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < space.coordinates.size(); ++i) {
    const auto& u = space.coordinates[i];
    const auto& p = space.momenta[i];
    terms.push_back(sym::differentiate(f, u) * sym::differentiate(g, p));
    terms.push_back(-(sym::differentiate(f, p) * sym::differentiate(g, u)));
  }
  return sym::make_sum(std::move(terms));
}

}  // namespace gq::classical

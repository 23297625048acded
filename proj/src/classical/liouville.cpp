#include <algorithm>

#include "genquant/classical/classical.hpp"
#include "genquant/error.hpp"

namespace gq::classical {

std::vector<std::string> LiouvilleEquation::variables() const {
  std::vector<std::string> vars = space.coordinates;
  vars.insert(vars.end(), space.momenta.begin(), space.momenta.end());
  vars.push_back(kTime);
  return vars;
}

Expr LiouvilleEquation::lhs() const { return sym::compose(terms, variables()); }

Expr phase_space_density(const PhaseSpace& space) {
  std::vector<std::string> vars = space.coordinates;
  vars.insert(vars.end(), space.momenta.begin(), space.momenta.end());
  vars.push_back(kTime);
  return Expr::field("F", std::move(vars));
}

namespace {

// Display order: time derivative first, then coordinate derivatives, then
// momentum derivatives.
int term_rank(const sym::DerivTerm& term, const PhaseSpace& space) {
  if (term.orders.empty()) return -1;
  const std::string& v = term.orders.begin()->first;
  if (v == kTime) return 0;
  for (std::size_t i = 0; i < space.coordinates.size(); ++i) {
    if (space.coordinates[i] == v) return 1 + static_cast<int>(i);
    if (space.momenta[i] == v) return 1 + static_cast<int>(space.coordinates.size() + i);
  }
  return 100;
}

}  // namespace

LiouvilleEquation liouville_equation(const ClassicalHamiltonian& h) {
  const Expr F = phase_space_density(h.space);
  const Expr lhs = sym::differentiate(F, kTime) + poisson_bracket(F, h.total(), h.space);
  auto decomposition = sym::linear_decompose(lhs, "F");
  if (!decomposition.remainder.is_zero()) {
    throw UnsupportedHamiltonianError("Liouville equation has a term free of F: " +
                                      sym::to_infix(decomposition.remainder));
  }
  LiouvilleEquation eq;
  eq.space = h.space;
  eq.terms = std::move(decomposition.terms);
  for (auto& t : eq.terms) t.coefficient = sym::simplify(t.coefficient);
  std::stable_sort(eq.terms.begin(), eq.terms.end(), [&](const auto& a, const auto& b) {
    return term_rank(a, eq.space) < term_rank(b, eq.space);
  });
  return eq;
}

}  // namespace gq::classical

#include "genquant/coords/geometry.hpp"
#include "genquant/error.hpp"
#include "genquant/quantize/quantize.hpp"

namespace gq::quantize {

using classical::kHbar;
using classical::kTime;
using sym::MultiIndex;
using sym::Rational;

std::vector<std::string> DensityEquation::variables() const {
  std::vector<std::string> vars = coordinates;
  vars.insert(vars.end(), displacements.begin(), displacements.end());
  vars.push_back(kTime);
  return vars;
}

Expr DensityEquation::density() const { return Expr::field("rho", variables()); }

Expr DensityEquation::lhs() const { return sym::compose(terms, variables()); }

Expr DensityEquation::rhs() const { return rhs_coefficient * sym::differentiate(density(), kTime); }

namespace {

// Powers of each momentum in a monomial such as p_r^2 * p_theta.
std::map<std::string, int> momentum_powers(const Expr& monomial) {
  std::map<std::string, int> out;
  for (const auto& f : sym::factors_of(monomial)) {
    if (f.is_one()) continue;
    if (f.is(sym::Kind::Symbol)) {
      out[f.name()] += 1;
    } else if (f.is(sym::Kind::Power) && f.base().is(sym::Kind::Symbol) && f.exponent().is_integer()) {
      out[f.base().name()] += static_cast<int>(f.exponent().num());
    } else {
      throw UnsupportedHamiltonianError("coefficient is not polynomial in the momenta: " + sym::to_infix(monomial));
    }
  }
  return out;
}

Expr power_of(const Expr& base, int n) { return sym::pow(base, Rational(n)); }

}  // namespace

DensityEquation wigner_transform(const classical::LiouvilleEquation& liouville, const coords::CoordinateSystem& cs) {
  const auto& space = liouville.space;
  DensityEquation eq;
  eq.coordinates = space.coordinates;
  for (const auto& u : space.coordinates) eq.displacements.push_back(classical::displacement_name(u));
  const auto vars = eq.variables();

  std::map<std::string, std::string> delta_of;  // momentum -> displacement
  for (std::size_t i = 0; i < space.momenta.size(); ++i) delta_of[space.momenta[i]] = eq.displacements[i];

  const Expr I = sym::imaginary_unit();
  const Expr hbar = sym::symbol(kHbar);
  const Expr minus_i_hbar = -(I * hbar);
  // J enters as an opaque field so that J / J cancels before it is expanded.
  const std::string jacobian_name = "J$";
  const Expr J = Expr::field(jacobian_name, space.coordinates);

  // rho differentiated by the displacement multi-index matching beta (and
  // optionally by t).
  auto rho = [&](const std::map<std::string, int>& beta, bool time) {
    MultiIndex mi;
    for (const auto& [p, n] : beta) {
      if (n > 0) mi[delta_of.at(p)] = n;
    }
    if (time) mi[kTime] = 1;
    return sym::field_atom("rho", vars, mi);
  };

  // Transform of the whole Liouville equation, in terms of G = J rho.
  std::vector<Expr> transformed;
  for (const auto& term : liouville.terms) {
    if (term.orders.size() != 1 || term.orders.begin()->second != 1) {
      throw UnsupportedHamiltonianError("Liouville term with derivative " + sym::describe(term.orders) +
                                        " is not a single first derivative");
    }
    const std::string& var = term.orders.begin()->first;
    for (const auto& [monomial, c] : sym::split_monomials(term.coefficient, space.momenta)) {
      const auto beta = momentum_powers(monomial);
      int degree = 0;
      for (const auto& [p, n] : beta) degree += n;
      if (degree > 2) {
        throw UnsupportedHamiltonianError("Liouville term of momentum degree " + std::to_string(degree) +
                                          " (at most 2 supported): " + sym::to_infix(monomial));
      }
      const Expr scale = power_of(minus_i_hbar, degree);
      if (var == kTime) {
        transformed.push_back(c * scale * J * rho(beta, true));
      } else if (delta_of.count(var)) {
        // Integrate by parts in p_j; surface terms vanish for a normalizable F.
        const std::string& delta = delta_of.at(var);
        auto it = beta.find(var);
        const int beta_j = it == beta.end() ? 0 : it->second;
        if (beta_j > 0) {
          auto lowered = beta;
          lowered[var] -= 1;
          transformed.push_back(-(c * Expr(beta_j) * power_of(minus_i_hbar, degree - 1) * J * rho(lowered, false)));
        }
        transformed.push_back(-(c * I / hbar * sym::symbol(delta) * scale * J * rho(beta, false)));
      } else {
        transformed.push_back(c * scale * sym::differentiate(J * rho(beta, false), var));
      }
    }
  }
  const Expr total = sym::make_sum(std::move(transformed));
  eq.rhs_coefficient = I * hbar;
  const Expr rho_t = sym::field_atom("rho", vars, {{kTime, 1}});
  // (i hbar / J) total = 0 with the time derivative moved to the right.
  const Expr lhs = sym::expand(sym::substitute_field(
      sym::expand(eq.rhs_coefficient * rho_t - eq.rhs_coefficient / J * total), jacobian_name,
      coords::jacobians(cs).coordinate));
  auto decomposition = sym::linear_decompose(lhs, "rho");
  if (!decomposition.remainder.is_zero()) {
    throw UnsupportedHamiltonianError("density equation has a term free of rho: " +
                                      sym::to_infix(decomposition.remainder));
  }
  for (auto& t : decomposition.terms) {
    if (t.orders.count(kTime)) {
      throw UnsupportedHamiltonianError("time derivative left on the left-hand side: " + sym::to_infix(t.coefficient));
    }
    t.coefficient = sym::simplify(t.coefficient);
    if (!t.coefficient.is_zero()) eq.terms.push_back(std::move(t));
  }
  return eq;
}

}  // namespace gq::quantize

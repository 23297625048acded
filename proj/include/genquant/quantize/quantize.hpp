#pragma once

#include <string>
#include <vector>

#include "genquant/classical/classical.hpp"
#include "genquant/coords/coordinate_system.hpp"
#include "genquant/symcore/deriv_term.hpp"
#include "genquant/symcore/orders.hpp"

namespace gq::quantize {

using sym::Expr;

/// Equation for the two-point density rho(u, delta_u, t):
/// sum(terms) = rhs_coefficient * d rho / dt, with rhs_coefficient = i hbar.
struct DensityEquation {
  std::vector<std::string> coordinates;
  std::vector<std::string> displacements;
  std::vector<sym::DerivTerm> terms;
  Expr rhs_coefficient;

  /// rho's variables: coordinates, displacements, t.
  std::vector<std::string> variables() const;
  Expr density() const;
  Expr lhs() const;
  Expr rhs() const;
};

/// Fourier transform of the Liouville equation over the momenta with kernel
/// exp(i p.delta_u / hbar) and measure dp / (h_1 h_2 h_3). Throws
/// UnsupportedHamiltonianError for terms of momentum degree above two or for
/// derivative shapes other than a single first derivative of F.
DensityEquation wigner_transform(const classical::LiouvilleEquation& liouville, const coords::CoordinateSystem& cs);

/// Second-order expansion of psi*(u - delta_u/2) psi(u + delta_u/2) with
/// psi = R exp(i S / hbar):
///   rho = { R^2 + sum_ij delta_i delta_j Q_ij } exp((i/hbar) sum_k delta_k dS/du_k)
/// with Q_ij = (R/4)(d2R/du_i du_j - sum_k Gamma^k_ij dR/du_k) - (1/4) dR/du_i dR/du_j.
struct AmplitudeExpansion {
  std::vector<std::string> coordinates;
  std::vector<std::string> displacements;
  Expr R;
  Expr S;
  Expr constant;
  std::vector<std::vector<Expr>> quadratic;  // Q_ij, symmetric
  std::vector<Expr> phase_gradient;          // dS/du_i

  /// Coefficient of the monomial delta_i delta_j (Q_ii, or 2 Q_ij for i != j).
  Expr monomial_coefficient(int i, int j) const;
  Expr amplitude_polynomial() const;
  Expr phase_exponent() const;
  /// Polynomial part times the phase factor expanded to `order` in delta_u,
  /// grouped by total degree (higher degrees are reported as discarded).
  sym::OrderCollection truncated_density(int order) const;
};

AmplitudeExpansion amplitude_expansion(const coords::CoordinateSystem& cs);

/// Quantum Hamilton-Jacobi bracket and continuity equation.
struct MadelungSplit {
  std::vector<std::string> coordinates;
  std::vector<std::string> displacements;
  /// dR^2/dt + div(R^2 grad S / m).
  Expr continuity_equation;
  /// B = dS/dt + |grad S|^2 / 2m + V - (hbar^2 / 2mR) Laplacian(R).
  Expr bracket;
  /// Degree-one coefficients of the density equation after removing
  /// dS/du_j times the continuity equation and dividing by R^2; each equals dB/du_j.
  std::vector<Expr> gradient;
  double max_residual = 0.0;

  /// sum_j delta_j dB/du_j.
  Expr hj_equation() const;
};

/// Substitutes the amplitude expansion into the density equation, applies
/// every displacement derivative, and collects degrees zero and one. Throws
/// SplitFailureError when a degree-one coefficient is not the gradient of
/// the bracket.
MadelungSplit madelung_collect(const DensityEquation& density, const AmplitudeExpansion& amplitude,
                               const coords::CoordinateSystem& cs, const Expr& potential);

/// One kinetic term (outer) d/du_i (flux d/du_i).
struct KineticTerm {
  int axis = 0;
  std::string coordinate;
  Expr outer;  // 1 / (h_1 h_2 h_3)
  Expr flux;   // (h_1 h_2 h_3) / h_i^2
  /// Same term with every factor of `flux` that does not depend on u_i moved
  /// into the outer coefficient.
  Expr reduced_outer;
  Expr reduced_flux;
};

/// H = prefactor * sum_i outer_i d/du_i (flux_i d/du_i) + V.
struct HamiltonOperator {
  std::vector<std::string> coordinates;
  std::vector<KineticTerm> kinetic;
  Expr prefactor;  // -hbar^2 / (2m)
  Expr potential;
  Expr jacobian;   // h_1 h_2 h_3

  /// H acting on an expression in the coordinates (and possibly t).
  Expr apply(const Expr& psi) const;
  /// Laplace-Beltrami part only: sum_i outer_i d/du_i (flux_i d/du_i psi).
  Expr laplacian(const Expr& psi) const;
};

HamiltonOperator hamilton_operator(const coords::CoordinateSystem& cs, const Expr& potential);

struct ConsistencyPart {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

struct ConsistencyReport {
  std::string system;
  std::vector<ConsistencyPart> parts;
  bool passed() const;
};

/// Puts psi = R exp(iS/hbar) into (H psi - i hbar dpsi/dt) / psi and checks that
/// the real part equals the Hamilton-Jacobi bracket and the imaginary part
/// equals -(hbar / 2R^2) times the continuity equation.
ConsistencyReport verify_consistency(const coords::CoordinateSystem& cs, const Expr& potential);

/// The same comparison against an already computed split.
ConsistencyReport verify_consistency(const coords::CoordinateSystem& cs, const Expr& potential,
                                     const MadelungSplit& split);

/// Default symbolic potential V(u_1, ..., u_n).
Expr symbolic_potential(const coords::CoordinateSystem& cs);

/// R(u, t) and S(u, t) field atoms.
Expr amplitude_field(const coords::CoordinateSystem& cs);
Expr phase_field(const coords::CoordinateSystem& cs);

}  // namespace gq::quantize

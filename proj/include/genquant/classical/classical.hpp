#pragma once

#include <string>
#include <vector>

#include "genquant/coords/coordinate_system.hpp"
#include "genquant/symcore/deriv_term.hpp"

namespace gq::classical {

using sym::Expr;

// Symbol naming shared by every derivation stage.
inline const std::string kTime = "t";
inline const std::string kMass = "m";
inline const std::string kHbar = "hbar";
inline std::string momentum_name(const std::string& coordinate) { return "p_" + coordinate; }
inline std::string displacement_name(const std::string& coordinate) { return "delta_" + coordinate; }

/// Canonical pairs (u_i, p_i).
struct PhaseSpace {
  std::vector<std::string> coordinates;
  std::vector<std::string> momenta;
};

PhaseSpace phase_space(const coords::CoordinateSystem& cs);

struct ClassicalHamiltonian {
  PhaseSpace space;
  Expr kinetic;    // sum_i p_i^2 / (2 m h_i^2)
  Expr potential;  // V(u)
  Expr mass;

  Expr total() const { return kinetic + potential; }
};

/// H = (1/2m) sum_i p_i^2 / h_i^2 + V(u). Throws InvalidPotentialError if V
/// mentions a momentum.
ClassicalHamiltonian classical_hamiltonian(const coords::CoordinateSystem& cs, const Expr& potential);

/// {f, g} = sum_i (df/du_i dg/dp_i - df/dp_i dg/du_i).
Expr poisson_bracket(const Expr& f, const Expr& g, const PhaseSpace& space);

/// dF/dt + {F, H} = 0 with F(u, p, t) an opaque field, written as a list of
/// derivative terms whose sum vanishes.
struct LiouvilleEquation {
  PhaseSpace space;
  std::vector<sym::DerivTerm> terms;

  /// Variables of F in order: coordinates, momenta, t.
  std::vector<std::string> variables() const;
  /// Sum of all terms as a single expression in F atoms.
  Expr lhs() const;
};

LiouvilleEquation liouville_equation(const ClassicalHamiltonian& h);

/// F(u, p, t) as a field atom.
Expr phase_space_density(const PhaseSpace& space);

}  // namespace gq::classical

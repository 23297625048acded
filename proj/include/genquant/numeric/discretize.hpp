#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "genquant/numeric/grid.hpp"
#include "genquant/quantize/quantize.hpp"

namespace gq::numeric {

/// Physical constants substituted for the symbols hbar and m, plus any other
/// named parameters appearing in a potential.
struct Units {
  double hbar = 1.0;
  double mass = 1.0;
  std::map<std::string, double> parameters;

  std::map<std::string, double> constants() const;
};

/// Potential as a function of the grid coordinates.
using PotentialFn = std::function<double(std::span<const double>)>;

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Symmetric matrix W^{1/2} (kinetic + V) W^{-1/2} of the flux-form
/// discretization, where W holds the volume weights J * (cell volume).
struct DiscreteOperator {
  SparseMatrix matrix;
  Grid grid;
  Units units;
  std::vector<double> weights;
  /// Gershgorin bound max_i sum_j |A_ij|.
  double norm_bound = 0.0;
};

/// Discretizes op on g. Each kinetic term (1/J) d_i(F_i d_i) becomes a sum of
/// face fluxes F_i(face) * (transverse cell area) / (node gap); the potential
/// comes from op.potential unless `potential` is given. Throws
/// SingularPotentialError naming the node when V is not finite there, and
/// GridError when the grid does not match the operator or a weight is not
/// positive.
DiscreteOperator discretize(const quantize::HamiltonOperator& op, const Grid& g, const Units& units = {},
                            const PotentialFn& potential = {});

/// max |A_ij - A_ji| (zero by construction).
double asymmetry(const SparseMatrix& a);

/// Compiles a real expression in the grid coordinates with hbar, m and the
/// unit parameters bound. Throws InvalidPotentialError for undetermined
/// functions or unknown symbols.
PotentialFn compile_potential(const sym::Expr& v, const std::vector<std::string>& coordinates,
                              const Units& units = {});

}  // namespace gq::numeric

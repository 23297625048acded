#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "genquant/numeric/discretize.hpp"

namespace gq::numeric {

struct EigenOptions {
  /// Matrices up to this dimension are solved densely.
  int dense_threshold = 1500;
  std::uint64_t seed = 1729;
  /// Convergence: residual norm below tol * max(1, norm bound).
  double tol = 1e-10;
  int max_iterations = 200;
  /// Chebyshev filter degree for the iterative solver.
  int filter_degree = 40;
};

struct EigenResult {
  std::vector<double> values;  // ascending
  std::string method;          // "tridiagonal", "dense", "chebyshev-subspace"
  int iterations = 0;
  double max_residual = 0.0;
};

/// The k smallest eigenvalues of a symmetric matrix. Tridiagonal matrices and
/// matrices below the dense threshold are solved directly; larger ones with
/// Chebyshev-filtered subspace iteration started from a seeded random block.
/// Throws ConvergenceError (with the residual norms) if the iteration does
/// not converge.
EigenResult smallest_eigenvalues(const SparseMatrix& a, int k, const EigenOptions& options = {});

}  // namespace gq::numeric

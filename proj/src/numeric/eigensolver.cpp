#include "genquant/numeric/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "genquant/error.hpp"

namespace gq::numeric {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

bool is_tridiagonal(const SparseMatrix& a) {
  for (Eigen::Index r = 0; r < a.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(a, r); it; ++it) {
      if (std::abs(it.row() - it.col()) > 1) return false;
    }
  }
  return true;
}

std::vector<double> first_k(const VectorXd& values, int k) {
  std::vector<double> out(values.data(), values.data() + values.size());
  std::sort(out.begin(), out.end());
  out.resize(static_cast<std::size_t>(k));
  return out;
}

double gershgorin_upper(const SparseMatrix& a) {
  double upper = -std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < a.outerSize(); ++r) {
    double diag = 0.0;
    double off = 0.0;
    for (SparseMatrix::InnerIterator it(a, r); it; ++it) {
      if (it.col() == r) {
        diag = it.value();
      } else {
        off += std::abs(it.value());
      }
    }
    upper = std::max(upper, diag + off);
  }
  return upper;
}

MatrixXd orthonormalize(const MatrixXd& x) {
  Eigen::HouseholderQR<MatrixXd> qr(x);
  return qr.householderQ() * MatrixXd::Identity(x.rows(), x.cols());
}

// Degree-m Chebyshev polynomial in A that damps [lo, hi] and amplifies
// eigenvalues below lo, scaled so that values near `lowest` stay O(1).
MatrixXd chebyshev_filter(const SparseMatrix& a, const MatrixXd& x0, int degree, double lo, double hi, double lowest) {
  const double e = (hi - lo) / 2.0;
  const double c = (hi + lo) / 2.0;
  double sigma = e / (lowest - c);
  const double tau = 2.0 / sigma;
  MatrixXd x = x0;
  MatrixXd y = (a * x - c * x) * (sigma / e);
  for (int i = 2; i <= degree; ++i) {
    const double sigma_next = 1.0 / (tau - sigma);
    MatrixXd next = (a * y - c * y) * (2.0 * sigma_next / e) - (sigma * sigma_next) * x;
    x = std::move(y);
    y = std::move(next);
    sigma = sigma_next;
  }
  return y;
}

EigenResult subspace_iteration(const SparseMatrix& a, int k, const EigenOptions& options) {
  const Eigen::Index n = a.rows();
  const int block = static_cast<int>(std::min<Eigen::Index>(n, k + std::max(8, k / 2)));
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  MatrixXd x(n, block);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = normal(rng);
  }
  x = orthonormalize(x);

  const double upper = gershgorin_upper(a);
  const double scale = std::max(1.0, std::abs(upper));
  EigenResult result;
  result.method = "chebyshev-subspace";
  std::vector<double> residuals;
  VectorXd theta;
  auto rayleigh_ritz = [&]() {
    MatrixXd ax = a * x;
    MatrixXd h = x.transpose() * ax;
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(h);
    theta = eig.eigenvalues();
    x = x * eig.eigenvectors();
    ax = ax * eig.eigenvectors();
    residuals.assign(static_cast<std::size_t>(k), 0.0);
    double worst = 0.0;
    for (int j = 0; j < k; ++j) {
      const double r = (ax.col(j) - theta(j) * x.col(j)).norm();
      residuals[static_cast<std::size_t>(j)] = r;
      worst = std::max(worst, r);
    }
    return worst;
  };
  rayleigh_ritz();
  for (int it = 1; it <= options.max_iterations; ++it) {
    const double lo = theta(block - 1);
    if (!(lo < upper)) break;
    x = orthonormalize(chebyshev_filter(a, x, options.filter_degree, lo, upper, theta(0)));
    const double worst = rayleigh_ritz();
    result.iterations = it;
    result.max_residual = worst;
    if (worst <= options.tol * scale) {
      result.values.assign(theta.data(), theta.data() + k);
      return result;
    }
  }
  std::ostringstream msg;
  msg << "subspace iteration did not converge after " << result.iterations << " iterations; residual norms:";
  for (double r : residuals) msg << " " << r;
  throw ConvergenceError(msg.str());
}

}  // namespace

EigenResult smallest_eigenvalues(const SparseMatrix& a, int k, const EigenOptions& options) {
  const auto n = static_cast<int>(a.rows());
  if (a.rows() != a.cols()) throw GridError("eigenvalue problem needs a square matrix");
  if (k < 1 || k > n) {
    throw GridError("requested " + std::to_string(k) + " eigenvalues of a matrix of dimension " + std::to_string(n));
  }
  EigenResult result;
  if (is_tridiagonal(a)) {
    VectorXd diag(n);
    VectorXd sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag(i) = a.coeff(i, i);
    for (int i = 0; i + 1 < n; ++i) sub(i) = a.coeff(i + 1, i);
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw ConvergenceError("tridiagonal eigenvalue iteration failed");
    result.values = first_k(eig.eigenvalues(), k);
    result.method = "tridiagonal";
    return result;
  }
  if (n <= options.dense_threshold) {
    const MatrixXd dense = MatrixXd(a);
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(dense, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw ConvergenceError("dense eigenvalue iteration failed");
    result.values = first_k(eig.eigenvalues(), k);
    result.method = "dense";
    return result;
  }
  return subspace_iteration(a, k, options);
}

}  // namespace gq::numeric

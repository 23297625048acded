#pragma once

#include <string>
#include <vector>

#include "genquant/coords/coordinate_system.hpp"

namespace gq::coords {

struct Jacobians {
  Expr coordinate;  // J_u = h_1 h_2 h_3
  Expr momentum;    // J_p = 1 / J_u
};

Jacobians jacobians(const CoordinateSystem& cs);

/// Christoffel symbols of the second kind of the diagonal metric g_ii = h_i^2,
/// indexed as (k, i, j) for Gamma^k_ij.
class ChristoffelTable {
 public:
  ChristoffelTable() = default;
  explicit ChristoffelTable(int dimension);

  int dimension() const { return dim_; }
  const Expr& operator()(int k, int i, int j) const { return entries_[index(k, i, j)]; }
  Expr& at(int k, int i, int j) { return entries_[index(k, i, j)]; }
  bool all_zero() const;

 private:
  std::size_t index(int k, int i, int j) const {
    return static_cast<std::size_t>((k * dim_ + i) * dim_ + j);
  }
  int dim_ = 0;
  std::vector<Expr> entries_;
};

ChristoffelTable christoffel(const CoordinateSystem& cs);

/// Metric tensor component g_ij of the diagonal metric.
Expr metric(const CoordinateSystem& cs, int i, int j);

/// dg_ij/du_k - Gamma^l_ki g_lj - Gamma^l_kj g_il for every triple (k, i, j),
/// simplified; all entries vanish for a metric-compatible table.
std::vector<Expr> metric_compatibility_residuals(const CoordinateSystem& cs, const ChristoffelTable& gamma);

/// Physical momentum components p_i / h_i along the unit vectors e_i.
std::vector<Expr> physical_momentum(const CoordinateSystem& cs, const std::vector<Expr>& momenta);

/// Cartesian components sum_i (p_i / h_i) e_i of the momentum vector (needs a map).
std::vector<Expr> momentum_in_target_chart(const CoordinateSystem& cs, const std::vector<Expr>& momenta);

}  // namespace gq::coords

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gq::numeric {

/// Treatment of one end of a coordinate axis.
enum class Edge {
  Dirichlet,  // psi = 0 on the boundary point
  ZeroFlux,   // no flux through the boundary face (coordinate singularity)
  Periodic,
};

enum class Spacing { Uniform, Logarithmic };

/// Requested discretization of one coordinate.
///
/// Node placement follows the edges: with Dirichlet on both ends the nodes are
/// lo + k*d for k = 1..n with d = (hi - lo)/(n + 1); if either end is ZeroFlux
/// the grid is cell-centred (nodes at half spacings, no node on the boundary);
/// periodic axes use lo + k*d for k = 0..n-1 with d = (hi - lo)/n.
/// Logarithmic spacing applies the same rules to ln(u) and needs lo > 0.
struct AxisSpec {
  std::string coordinate;
  double lo = 0.0;
  double hi = 1.0;
  int nodes = 0;
  Edge lower = Edge::Dirichlet;
  Edge upper = Edge::Dirichlet;
  Spacing spacing = Spacing::Uniform;
};

struct Axis {
  AxisSpec spec;
  std::vector<double> nodes;
  /// faces[k] and faces[k+1] bound the cell of node k.
  std::vector<double> faces;
  std::vector<double> widths;

  int size() const { return static_cast<int>(nodes.size()); }
  /// Distance between node k and node k+1 (wrapping for periodic axes).
  double gap(int k) const;
  /// Distance from the first/last node to its Dirichlet boundary point.
  double lower_gap() const;
  double upper_gap() const;
};

Axis make_axis(const AxisSpec& spec);

/// Tensor-product grid over the coordinates of a system.
class Grid {
 public:
  Grid() = default;
  explicit Grid(std::vector<AxisSpec> specs);

  int dimension() const { return static_cast<int>(axes_.size()); }
  const std::vector<Axis>& axes() const { return axes_; }
  const Axis& axis(int d) const { return axes_[static_cast<std::size_t>(d)]; }
  std::size_t size() const { return size_; }

  /// Flat index of a multi-index (last axis fastest).
  std::size_t flat(const std::vector<int>& index) const;
  std::vector<int> unflat(std::size_t flat) const;
  std::vector<double> point(const std::vector<int>& index) const;
  std::vector<std::string> coordinates() const;
  std::string describe() const;

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

}  // namespace gq::numeric

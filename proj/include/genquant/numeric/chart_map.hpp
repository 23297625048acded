#pragma once

#include <optional>
#include <span>
#include <vector>

#include "genquant/coords/coordinate_system.hpp"
#include "genquant/symcore/evaluate.hpp"

namespace gq::numeric {

/// Numeric point map u -> x(u) of a coordinate system with an embedding map,
/// with a Newton inverse restricted to the coordinate ranges.
class ChartMap {
 public:
  explicit ChartMap(const coords::CoordinateSystem& cs);

  int dimension() const { return static_cast<int>(forward_.size()); }
  std::vector<double> forward(std::span<const double> u) const;

  /// u with x(u) = x inside the open coordinate ranges (periodic coordinates
  /// wrapped), trying `guess` first and then a lattice of interior starts.
  std::optional<std::vector<double>> inverse(std::span<const double> x, const std::vector<double>* guess = nullptr) const;

 private:
  std::optional<std::vector<double>> newton(std::span<const double> x, std::vector<double> u) const;

  std::vector<coords::Coordinate> coordinates_;
  std::vector<sym::CompiledExpr> forward_;
  std::vector<std::vector<sym::CompiledExpr>> jacobian_;  // [component][coordinate]
  std::vector<std::vector<double>> starts_;
};

}  // namespace gq::numeric

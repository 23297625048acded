#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "genquant/symcore/equivalence.hpp"
#include "genquant/symcore/expr.hpp"

namespace gq::coords {

using sym::Expr;

/// Open interval of admissible coordinate values. Infinite ends are allowed.
struct CoordinateRange {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool periodic = false;

  bool contains(double v) const { return v > lo && v < hi; }
  bool finite() const;
};

struct Coordinate {
  std::string name;
  CoordinateRange range;
};

/// Frame data computed from an embedding map.
struct Frame {
  std::vector<Expr> scale_factors;           // h_i
  std::vector<std::vector<Expr>> unit_vectors;  // e_i, components in the target chart
};

/// An orthogonal curvilinear coordinate system in two or three dimensions.
///
/// Built either from an embedding map x_a(u), in which case the frame is
/// derived and orthogonality is verified, or directly from scale factors, in
/// which case orthogonality is assumed and flagged.
class CoordinateSystem {
 public:
  /// `targets` names the chart the map lands in (usually x, y, z).
  static CoordinateSystem from_map(std::string name, std::vector<Coordinate> coordinates,
                                   std::vector<std::string> targets, std::vector<Expr> map);
  static CoordinateSystem from_scale_factors(std::string name, std::vector<Coordinate> coordinates,
                                             std::vector<Expr> scale_factors);

  const std::string& name() const { return name_; }
  int dimension() const { return static_cast<int>(coordinates_.size()); }
  const std::vector<Coordinate>& coordinates() const { return coordinates_; }
  std::vector<std::string> names() const;
  /// Index of a coordinate name, or -1.
  int index_of(std::string_view name) const;

  bool has_map() const { return !map_.empty(); }
  const std::vector<std::string>& map_targets() const { return targets_; }
  const std::vector<Expr>& map() const { return map_; }
  /// Unit vectors e_i (empty without a map).
  const std::vector<std::vector<Expr>>& unit_vectors() const { return unit_vectors_; }

  const std::vector<Expr>& scale_factors() const { return scale_factors_; }
  const Expr& scale_factor(int i) const { return scale_factors_.at(static_cast<std::size_t>(i)); }
  bool orthogonality_assumed() const { return orthogonality_assumed_; }

  /// True if the map is the identity onto targets with the same names.
  bool is_identity_chart() const;

  /// Interior intervals for randomized checks over these coordinates.
  sym::SampleDomain sample_domain() const;

 private:
  CoordinateSystem() = default;
  void validate_coordinates() const;
  void check_positive_scale_factors() const;

  std::string name_;
  std::vector<Coordinate> coordinates_;
  std::vector<std::string> targets_;
  std::vector<Expr> map_;
  std::vector<std::vector<Expr>> unit_vectors_;
  std::vector<Expr> scale_factors_;
  bool orthogonality_assumed_ = false;
};

/// h_i = |dr/du_i| and e_i = (dr/du_i)/h_i. Orthogonality of every pair of
/// tangent vectors is checked with the equivalence sampler over `domain`;
/// a failure raises OrthogonalityError naming the pair.
Frame frame_and_scale_factors(const std::vector<Expr>& map, const std::vector<std::string>& coordinates,
                              const sym::SampleDomain& domain = {});

/// Square root of a squared scale factor that is positive on `domain`. Even
/// powers are halved symbolically where possible (r^2 sin^2(theta) gives
/// r sin(theta)); otherwise the principal root is kept.
Expr positive_sqrt(const Expr& squared, const sym::SampleDomain& domain);

/// Interior sampling interval for a coordinate range.
sym::Interval interior_interval(const CoordinateRange& range);

}  // namespace gq::coords

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genquant/coords/coordinate_system.hpp"
#include "genquant/numeric/discretize.hpp"
#include "genquant/numeric/eigensolver.hpp"

namespace gq::numeric {

/// A group of nearly equal eigenvalues standing for one degenerate level.
struct Cluster {
  double value = 0.0;  // mean of the members
  int multiplicity = 0;
  double spread = 0.0;  // largest minus smallest member
};

struct SpectrumReport {
  std::string system;
  std::string grid;
  std::string method;
  /// Ascending; exactly the members of `clusters`.
  std::vector<double> eigenvalues;
  std::vector<Cluster> clusters;
  /// Relative deltas per cluster against a comparison spectrum or analytic
  /// values; empty when nothing was compared.
  std::vector<double> deltas;
  double cluster_threshold = 1e-2;
  double norm_bound = 0.0;
};

/// Groups ascending eigenvalues: E_{i+1} joins the cluster of E_i when
/// (E_{i+1} - E_i) / |E_i| < threshold (absolute gap when E_i = 0).
std::vector<Cluster> cluster_levels(const std::vector<double>& sorted, double threshold = 1e-2);

/// The k smallest eigenvalues of a discrete operator, clustered. Checks that
/// the matrix is exactly symmetric first (GridError otherwise).
SpectrumReport eigen_spectrum(const DiscreteOperator& a, int k, const EigenOptions& options = {},
                              double cluster_threshold = 1e-2);

/// Fills report.deltas with |value_i - reference_i| / |reference_i| for the
/// clusters that have a reference.
void set_reference(SpectrumReport& report, const std::vector<double>& reference);

/// A potential made evaluable on the grid of one coordinate system.
struct ResolvedPotential {
  PotentialFn fn;
  /// The potential in the system's own coordinates, when symbolic.
  std::optional<sym::Expr> expr;
  std::string route;  // "direct", "map substitution" or "numeric chart inverse"
};

/// Expresses v on the coordinates of cs. v may be written in cs's own
/// coordinates, in the chart cs maps into, or in the coordinates of one of
/// `charts` that maps into the same chart (evaluated through a numeric
/// inverse of that chart's map). Symbols other than coordinates must be hbar,
/// m, pi or unit parameters. Throws InvalidPotentialError otherwise.
ResolvedPotential resolve_potential(const coords::CoordinateSystem& cs, const sym::Expr& v,
                                    const std::vector<coords::CoordinateSystem>& charts, const Units& units = {});

/// Separation of the angular part for rotationally symmetric problems.
enum class Reduction {
  None,
  Spherical,  // h = (1, r, r sin(theta)), per-l radial problems, multiplicity 2l + 1
  Polar,      // h = (1, r), per-m radial problems, multiplicity 1 for m = 0 and 2 otherwise
};

struct SpectrumOptions {
  int levels = 4;
  double cluster_threshold = 1e-2;
  /// Truncation radius for infinite coordinate ranges.
  double box_radius = 7.0;
  int nodes = 40;
  int radial_nodes = 2000;
  Spacing radial_spacing = Spacing::Uniform;
  /// Inner face of a logarithmic radial grid.
  double radial_min = 1e-2;
  /// Outer radius of the radial grid; 0 means box_radius.
  double radial_max = 0.0;
  bool allow_reduction = true;
  int max_angular = 200;
  Units units;
  EigenOptions eigen;
};

struct SpectrumPlan {
  Reduction reduction = Reduction::None;
  /// One axis per coordinate, or only the radial axis for a reduction.
  std::vector<AxisSpec> axes;
  std::string describe() const;
};

/// Reduction applicable to cs with the potential `v` (in cs coordinates).
Reduction detect_reduction(const coords::CoordinateSystem& cs, const std::optional<sym::Expr>& v);

/// Grid choice: periodic coordinates keep their period, infinite ends are
/// truncated at the box radius with Dirichlet edges, and finite ends where the
/// volume element vanishes become zero-flux edges of a cell-centred grid.
SpectrumPlan default_plan(const coords::CoordinateSystem& cs, const ResolvedPotential& v,
                          const SpectrumOptions& options = {});

/// Lowest `options.levels` distinct levels of H on cs, requesting more
/// eigenvalues (or more angular channels) until the next level is seen.
SpectrumReport level_spectrum(const coords::CoordinateSystem& cs, const ResolvedPotential& v, const SpectrumPlan& plan,
                              const SpectrumOptions& options = {});

struct ComparisonReport {
  SpectrumReport a;
  SpectrumReport b;
  std::vector<double> deltas;
  bool structural_mismatch = false;
  std::string mismatch;
  double tol = 0.0;
  bool passed = false;
};

/// Spectra of the same potential in two systems, clusters aligned by index,
/// relative deltas against b. Differing cluster counts or multiplicities are a
/// structural mismatch and fail the comparison.
ComparisonReport compare_spectra(const coords::CoordinateSystem& a, const coords::CoordinateSystem& b,
                                 const sym::Expr& v, double tol, const SpectrumOptions& options = {},
                                 const std::vector<coords::CoordinateSystem>& extra_charts = {});

struct CovarianceReport {
  std::string system_a;
  std::string system_b;
  int points = 0;
  int rejected = 0;
  double max_relative_deviation = 0.0;
};

/// Evaluates H psi symbolically in both systems at random interior points of
/// b, mapped into a. psi and v are written in a's coordinates, which must be
/// the chart b maps into. Deviation per point is |Ha - Hb| / max(|Ha|, |Hb|),
/// or the absolute difference when both are below 1e-12. Points where either
/// side is not finite or the mapped point leaves a's ranges are resampled and
/// counted as rejected.
CovarianceReport covariance_check(const coords::CoordinateSystem& a, const coords::CoordinateSystem& b,
                                  const sym::Expr& v, const sym::Expr& psi, int n_points,
                                  std::uint64_t seed = sym::default_seed(), const Units& units = {});

}  // namespace gq::numeric

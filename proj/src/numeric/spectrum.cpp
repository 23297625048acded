#include "genquant/numeric/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <sstream>

#include "genquant/classical/classical.hpp"
#include "genquant/error.hpp"
#include "genquant/numeric/chart_map.hpp"
#include "genquant/symcore/evaluate.hpp"

namespace gq::numeric {

using coords::CoordinateSystem;
using sym::Expr;

std::vector<Cluster> cluster_levels(const std::vector<double>& sorted, double threshold) {
  std::vector<Cluster> out;
  std::size_t begin = 0;
  auto close = [&](std::size_t end) {
    Cluster c;
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += sorted[i];
    c.multiplicity = static_cast<int>(end - begin);
    c.value = sum / c.multiplicity;
    c.spread = sorted[end - 1] - sorted[begin];
    out.push_back(c);
    begin = end;
  };
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i == sorted.size()) {
      close(i);
      break;
    }
    const double gap = sorted[i] - sorted[i - 1];
    const double scale = std::abs(sorted[i - 1]);
    const bool same = scale > 0 ? gap / scale < threshold : gap < threshold;
    if (!same) close(i);
  }
  return out;
}

SpectrumReport eigen_spectrum(const DiscreteOperator& a, int k, const EigenOptions& options, double cluster_threshold) {
  if (asymmetry(a.matrix) != 0.0) throw GridError("discrete operator is not symmetric");
  const EigenResult result = smallest_eigenvalues(a.matrix, k, options);
  SpectrumReport report;
  report.grid = a.grid.describe();
  report.method = result.method;
  report.eigenvalues = result.values;
  report.clusters = cluster_levels(result.values, cluster_threshold);
  report.cluster_threshold = cluster_threshold;
  report.norm_bound = a.norm_bound;
  return report;
}

void set_reference(SpectrumReport& report, const std::vector<double>& reference) {
  report.deltas.clear();
  const std::size_t n = std::min(report.clusters.size(), reference.size());
  for (std::size_t i = 0; i < n; ++i) {
    report.deltas.push_back(std::abs(report.clusters[i].value - reference[i]) / std::abs(reference[i]));
  }
}

namespace {

std::set<std::string> unbound_symbols(const Expr& v, const Units& units) {
  auto symbols = sym::free_symbols(v);
  symbols.erase(classical::kHbar);
  symbols.erase(classical::kMass);
  symbols.erase("pi");
  for (const auto& [name, value] : units.parameters) symbols.erase(name);
  return symbols;
}

bool covers(const std::set<std::string>& symbols, const std::vector<std::string>& pool) {
  return std::all_of(symbols.begin(), symbols.end(),
                     [&](const std::string& s) { return std::find(pool.begin(), pool.end(), s) != pool.end(); });
}

std::string join(const std::set<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

ResolvedPotential resolve_potential(const CoordinateSystem& cs, const Expr& v, const std::vector<CoordinateSystem>& charts,
                                    const Units& units) {
  if (!sym::field_atoms(v).empty()) {
    throw InvalidPotentialError("potential " + sym::to_infix(v) + " contains an undetermined function");
  }
  const auto symbols = unbound_symbols(v, units);
  const auto names = cs.names();
  if (covers(symbols, names)) return {compile_potential(v, names, units), v, "direct"};
  if (cs.has_map() && covers(symbols, cs.map_targets())) {
    sym::Bindings bindings;
    for (std::size_t i = 0; i < cs.map().size(); ++i) bindings[cs.map_targets()[i]] = cs.map()[i];
    const Expr e = sym::simplify(sym::substitute(v, bindings));
    return {compile_potential(e, names, units), e, "map substitution"};
  }
  for (const auto& chart : charts) {
    if (!chart.has_map() || !covers(symbols, chart.names())) continue;
    const auto& targets = chart.map_targets();
    std::shared_ptr<ChartMap> forward;
    if (names != targets) {
      if (!cs.has_map() || cs.map_targets() != targets) continue;
      forward = std::make_shared<ChartMap>(cs);
    }
    auto inverse = std::make_shared<ChartMap>(chart);
    auto guess = std::make_shared<std::vector<double>>();
    const PotentialFn inner = compile_potential(v, chart.names(), units);
    const std::string chart_name = chart.name();
    PotentialFn fn = [forward, inverse, guess, inner, chart_name](std::span<const double> u) {
      const std::vector<double> x = forward ? forward->forward(u) : std::vector<double>(u.begin(), u.end());
      auto w = inverse->inverse(x, guess->empty() ? nullptr : guess.get());
      if (!w) {
        std::ostringstream msg;
        msg << "point (";
        for (std::size_t i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
        msg << ") has no preimage in " << chart_name << " coordinates";
        throw GridError(msg.str());
      }
      *guess = *w;
      return inner(*w);
    };
    return {fn, std::nullopt, "numeric chart inverse"};
  }
  throw InvalidPotentialError("cannot express potential " + sym::to_infix(v) + " in " + cs.name() +
                              " coordinates (unknown symbols: " + join(symbols) + ")");
}

Reduction detect_reduction(const CoordinateSystem& cs, const std::optional<Expr>& v) {
  if (!v) return Reduction::None;
  const auto names = cs.names();
  for (std::size_t i = 1; i < names.size(); ++i) {
    if (sym::depends_on(*v, names[i])) return Reduction::None;
  }
  const Expr r = sym::symbol(names[0]);
  const auto& h = cs.scale_factors();
  const auto& coords = cs.coordinates();
  const double two_pi = 2.0 * M_PI;
  auto full_turn = [&](const coords::CoordinateRange& range) {
    return range.periodic && std::abs(range.hi - range.lo - two_pi) < 1e-12;
  };
  if (cs.dimension() == 3 && h[0] == Expr(1) && h[1] == r && h[2] == r * sym::sin(sym::symbol(names[1])) &&
      coords[0].range.lo == 0.0 && coords[1].range.lo == 0.0 && std::abs(coords[1].range.hi - M_PI) < 1e-12 &&
      full_turn(coords[2].range)) {
    return Reduction::Spherical;
  }
  if (cs.dimension() == 2 && h[0] == Expr(1) && h[1] == r && coords[0].range.lo == 0.0 && full_turn(coords[1].range)) {
    return Reduction::Polar;
  }
  return Reduction::None;
}

std::string SpectrumPlan::describe() const {
  std::string out;
  switch (reduction) {
    case Reduction::None: break;
    case Reduction::Spherical: out = "per-l radial reduction, "; break;
    case Reduction::Polar: out = "per-m radial reduction, "; break;
  }
  return out + Grid(axes).describe();
}

SpectrumPlan default_plan(const CoordinateSystem& cs, const ResolvedPotential& v, const SpectrumOptions& options) {
  SpectrumPlan plan;
  plan.reduction = options.allow_reduction ? detect_reduction(cs, v.expr) : Reduction::None;
  const auto names = cs.names();
  if (plan.reduction != Reduction::None) {
    AxisSpec radial;
    radial.coordinate = names[0];
    radial.hi = options.radial_max > 0 ? options.radial_max : options.box_radius;
    radial.lo = options.radial_spacing == Spacing::Logarithmic ? options.radial_min : 0.0;
    radial.nodes = options.radial_nodes;
    radial.lower = Edge::ZeroFlux;
    radial.upper = Edge::Dirichlet;
    radial.spacing = options.radial_spacing;
    plan.axes.push_back(radial);
    return plan;
  }

  Expr jacobian(1);
  for (const auto& h : cs.scale_factors()) jacobian = jacobian * h;
  const sym::CompiledExpr volume(jacobian, names, options.units.constants());
  std::vector<double> middle;
  for (const auto& c : cs.coordinates()) {
    const auto iv = coords::interior_interval(c.range);
    middle.push_back(0.5 * (iv.lo + iv.hi));
  }
  const double typical = std::abs(volume(middle));
  auto edge_at = [&](std::size_t d, double value) {
    auto x = middle;
    x[d] = value;
    return std::abs(volume(x)) <= 1e-12 * std::max(typical, 1.0) ? Edge::ZeroFlux : Edge::Dirichlet;
  };
  const double box = options.box_radius;
  for (std::size_t d = 0; d < names.size(); ++d) {
    const auto& range = cs.coordinates()[d].range;
    AxisSpec spec;
    spec.coordinate = names[d];
    spec.nodes = options.nodes;
    if (range.periodic) {
      spec.lo = range.lo;
      spec.hi = range.hi;
      spec.lower = spec.upper = Edge::Periodic;
    } else {
      const bool lo_finite = std::isfinite(range.lo);
      const bool hi_finite = std::isfinite(range.hi);
      spec.lo = lo_finite ? range.lo : (hi_finite ? range.hi - 2.0 * box : -box);
      spec.hi = hi_finite ? range.hi : (lo_finite ? range.lo + box : box);
      spec.lower = lo_finite ? edge_at(d, range.lo) : Edge::Dirichlet;
      spec.upper = hi_finite ? edge_at(d, range.hi) : Edge::Dirichlet;
    }
    plan.axes.push_back(spec);
  }
  return plan;
}

namespace {

long binomial(int n, int k) {
  long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

void keep_levels(SpectrumReport& report, int levels) {
  if (static_cast<int>(report.clusters.size()) <= levels) return;
  report.clusters.resize(static_cast<std::size_t>(levels));
  std::size_t members = 0;
  for (const auto& c : report.clusters) members += static_cast<std::size_t>(c.multiplicity);
  report.eigenvalues.resize(members);
}

SpectrumReport reduced_spectrum(const CoordinateSystem& cs, const ResolvedPotential& v, const SpectrumPlan& plan,
                                const SpectrumOptions& options) {
  const int dim = plan.reduction == Reduction::Spherical ? 3 : 2;
  const std::string r_name = cs.names()[0];
  const Expr r = sym::symbol(r_name);
  const Expr hbar = sym::symbol(classical::kHbar);
  const Expr mass = sym::symbol(classical::kMass);
  const Expr volume = sym::pow(r, dim - 1);
  const Expr inverse_volume = sym::pow(r, -(dim - 1));
  const Grid grid(plan.axes);
  const int per_channel = static_cast<int>(std::min<std::size_t>(grid.size(), static_cast<std::size_t>(options.levels) + 1));

  std::vector<double> all;
  std::vector<Cluster> clusters;
  double norm = 0.0;
  int last_channel = 0;
  for (int l = 0; l <= options.max_angular; ++l) {
    const int lambda = dim == 3 ? l * (l + 1) : l * l;
    const int multiplicity = dim == 3 ? 2 * l + 1 : (l == 0 ? 1 : 2);
    quantize::HamiltonOperator op;
    op.coordinates = {r_name};
    op.kinetic = {quantize::KineticTerm{0, r_name, inverse_volume, volume, inverse_volume, volume}};
    op.prefactor = -(hbar * hbar) / (Expr(2) * mass);
    op.potential = *v.expr + hbar * hbar * Expr(lambda) / (Expr(2) * mass * r * r);
    op.jacobian = volume;
    const DiscreteOperator a = discretize(op, grid, options.units);
    if (asymmetry(a.matrix) != 0.0) throw GridError("discrete operator is not symmetric");
    norm = std::max(norm, a.norm_bound);
    const EigenResult channel = smallest_eigenvalues(a.matrix, per_channel, options.eigen);
    last_channel = l;
    // Stop once this channel starts at or above the first level beyond those requested.
    if (static_cast<int>(clusters.size()) > options.levels) {
      std::size_t before = 0;
      for (int i = 0; i < options.levels; ++i) before += static_cast<std::size_t>(clusters[static_cast<std::size_t>(i)].multiplicity);
      if (channel.values.front() >= all[before]) break;
    }
    for (double e : channel.values) all.insert(all.end(), static_cast<std::size_t>(multiplicity), e);
    std::sort(all.begin(), all.end());
    clusters = cluster_levels(all, options.cluster_threshold);
  }
  SpectrumReport report;
  report.system = cs.name();
  report.grid = plan.describe();
  report.method = "radial tridiagonal, channels 0.." + std::to_string(last_channel);
  report.eigenvalues = all;
  report.clusters = clusters;
  report.cluster_threshold = options.cluster_threshold;
  report.norm_bound = norm;
  keep_levels(report, options.levels);
  return report;
}

}  // namespace

SpectrumReport level_spectrum(const CoordinateSystem& cs, const ResolvedPotential& v, const SpectrumPlan& plan,
                              const SpectrumOptions& options) {
  if (options.levels < 1) throw GridError("at least one level must be requested");
  if (plan.reduction != Reduction::None) {
    if (!v.expr) throw InvalidPotentialError("radial reduction needs a symbolic potential");
    return reduced_spectrum(cs, v, plan, options);
  }
  const auto op = quantize::hamilton_operator(cs, v.expr ? *v.expr : Expr(0));
  const DiscreteOperator a = discretize(op, Grid(plan.axes), options.units, v.fn);
  const auto n = static_cast<long>(a.matrix.rows());
  long k = std::min(n, binomial(options.levels + cs.dimension() - 1, cs.dimension()) + 1);
  SpectrumReport report;
  while (true) {
    report = eigen_spectrum(a, static_cast<int>(k), options.eigen, options.cluster_threshold);
    if (static_cast<int>(report.clusters.size()) > options.levels || k == n) break;
    k = std::min(n, 2 * k);
  }
  report.system = cs.name();
  report.grid = plan.describe();
  keep_levels(report, options.levels);
  return report;
}

ComparisonReport compare_spectra(const CoordinateSystem& a, const CoordinateSystem& b, const Expr& v, double tol,
                                 const SpectrumOptions& options, const std::vector<CoordinateSystem>& extra_charts) {
  std::vector<CoordinateSystem> charts{a, b};
  charts.insert(charts.end(), extra_charts.begin(), extra_charts.end());
  const auto va = resolve_potential(a, v, charts, options.units);
  const auto vb = resolve_potential(b, v, charts, options.units);
  ComparisonReport out;
  out.tol = tol;
  out.a = level_spectrum(a, va, default_plan(a, va, options), options);
  out.b = level_spectrum(b, vb, default_plan(b, vb, options), options);
  const auto& ca = out.a.clusters;
  const auto& cb = out.b.clusters;
  if (ca.size() != cb.size()) {
    out.structural_mismatch = true;
    out.mismatch = std::to_string(ca.size()) + " clusters in " + a.name() + ", " + std::to_string(cb.size()) + " in " +
                   b.name();
  }
  bool within = true;
  for (std::size_t i = 0; i < std::min(ca.size(), cb.size()); ++i) {
    const double delta = ca[i].value == cb[i].value ? 0.0 : std::abs(ca[i].value - cb[i].value) / std::abs(cb[i].value);
    out.deltas.push_back(delta);
    within = within && delta < tol;
    if (ca[i].multiplicity != cb[i].multiplicity && !out.structural_mismatch) {
      out.structural_mismatch = true;
      out.mismatch = "level " + std::to_string(i + 1) + " has multiplicity " + std::to_string(ca[i].multiplicity) +
                     " in " + a.name() + " and " + std::to_string(cb[i].multiplicity) + " in " + b.name();
    }
  }
  out.a.deltas = out.deltas;
  out.b.deltas = out.deltas;
  out.passed = within && !out.structural_mismatch;
  return out;
}

}  // namespace gq::numeric

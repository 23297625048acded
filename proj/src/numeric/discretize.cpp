#include "genquant/numeric/discretize.hpp"

#include <cmath>
#include <sstream>

#include "genquant/classical/classical.hpp"
#include "genquant/error.hpp"
#include "genquant/symcore/evaluate.hpp"

namespace gq::numeric {

std::map<std::string, double> Units::constants() const {
  std::map<std::string, double> out = parameters;
  out[classical::kHbar] = hbar;
  out[classical::kMass] = mass;
  return out;
}

PotentialFn compile_potential(const sym::Expr& v, const std::vector<std::string>& coordinates, const Units& units) {
  if (!sym::field_atoms(v).empty()) {
    throw InvalidPotentialError("potential " + sym::to_infix(v) + " contains an undetermined function");
  }
  try {
    auto compiled = std::make_shared<sym::CompiledExpr>(v, coordinates, units.constants());
    return [compiled](std::span<const double> x) { return (*compiled)(x); };
  } catch (const EvaluationError& e) {
    throw InvalidPotentialError("cannot evaluate potential " + sym::to_infix(v) + ": " + e.what());
  }
}

namespace {

std::string describe_point(const Grid& g, const std::vector<double>& x) {
  std::ostringstream out;
  out << "(";
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (d) out << ", ";
    out << g.axis(static_cast<int>(d)).spec.coordinate << " = " << x[d];
  }
  out << ")";
  return out.str();
}

}  // namespace

DiscreteOperator discretize(const quantize::HamiltonOperator& op, const Grid& g, const Units& units,
                            const PotentialFn& potential) {
  const int dim = g.dimension();
  if (static_cast<int>(op.coordinates.size()) != dim) {
    throw GridError("operator has " + std::to_string(op.coordinates.size()) + " coordinates, grid has " +
                    std::to_string(dim));
  }
  for (int d = 0; d < dim; ++d) {
    if (g.axis(d).spec.coordinate != op.coordinates[static_cast<std::size_t>(d)]) {
      throw GridError("grid axis " + g.axis(d).spec.coordinate + " does not match operator coordinate " +
                      op.coordinates[static_cast<std::size_t>(d)]);
    }
  }
  const auto constants = units.constants();
  const sym::CompiledExpr jacobian(op.jacobian, op.coordinates, constants);
  std::vector<sym::CompiledExpr> flux;
  for (const auto& k : op.kinetic) flux.emplace_back(k.flux, op.coordinates, constants);
  const PotentialFn v = potential ? potential : compile_potential(op.potential, op.coordinates, units);
  const double kinetic_scale = units.hbar * units.hbar / (2.0 * units.mass);

  const std::size_t n = g.size();
  DiscreteOperator out;
  out.grid = g;
  out.units = units;
  out.weights.resize(n);
  std::vector<double> diagonal(n, 0.0);

  // Weights and potential.
  for (std::size_t a = 0; a < n; ++a) {
    const auto idx = g.unflat(a);
    const auto x = g.point(idx);
    double cell = 1.0;
    for (int d = 0; d < dim; ++d) cell *= g.axis(d).widths[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
    const double w = jacobian(x) * cell;
    if (!(w > 0) || !std::isfinite(w)) {
      throw GridError("volume weight " + std::to_string(w) + " is not positive at " + describe_point(g, x));
    }
    out.weights[a] = w;
    const double va = v(x);
    if (!std::isfinite(va)) {
      throw SingularPotentialError("potential is singular at node " + describe_point(g, x) +
                                   "; use a grid offset from the singular set");
    }
    diagonal[a] = va;
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(n * static_cast<std::size_t>(2 * dim + 1));
  for (std::size_t a = 0; a < n; ++a) {
    const auto idx = g.unflat(a);
    for (int d = 0; d < dim; ++d) {
      const Axis& axis = g.axis(d);
      const int k = idx[static_cast<std::size_t>(d)];
      double transverse = 1.0;
      for (int e = 0; e < dim; ++e) {
        if (e != d) transverse *= g.axis(e).widths[static_cast<std::size_t>(idx[static_cast<std::size_t>(e)])];
      }
      auto face_flux = [&](double face) {
        auto x = g.point(idx);
        x[static_cast<std::size_t>(d)] = face;
        return flux[static_cast<std::size_t>(d)](x) * transverse;
      };
      const bool periodic = axis.spec.lower == Edge::Periodic;
      const bool last = k + 1 == axis.size();
      // Face above node k: couples to node k+1, wraps, or closes the axis.
      if (!last || periodic) {
        if (axis.size() == 1) continue;
        const double t = face_flux(axis.faces[static_cast<std::size_t>(k) + 1]) / axis.gap(k);
        auto nidx = idx;
        nidx[static_cast<std::size_t>(d)] = last ? 0 : k + 1;
        const std::size_t b = g.flat(nidx);
        const double off = -kinetic_scale * t / std::sqrt(out.weights[a] * out.weights[b]);
        triplets.emplace_back(static_cast<int>(a), static_cast<int>(b), off);
        triplets.emplace_back(static_cast<int>(b), static_cast<int>(a), off);
        diagonal[a] += kinetic_scale * t / out.weights[a];
        diagonal[b] += kinetic_scale * t / out.weights[b];
      } else if (axis.spec.upper == Edge::Dirichlet) {
        const double t = face_flux(axis.faces.back()) / axis.upper_gap();
        diagonal[a] += kinetic_scale * t / out.weights[a];
      }
      if (k == 0 && !periodic && axis.spec.lower == Edge::Dirichlet) {
        const double t = face_flux(axis.faces.front()) / axis.lower_gap();
        diagonal[a] += kinetic_scale * t / out.weights[a];
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) triplets.emplace_back(static_cast<int>(a), static_cast<int>(a), diagonal[a]);
  out.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  out.matrix.makeCompressed();
  for (Eigen::Index r = 0; r < out.matrix.outerSize(); ++r) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(out.matrix, r); it; ++it) row += std::abs(it.value());
    out.norm_bound = std::max(out.norm_bound, row);
  }
  return out;
}

double asymmetry(const SparseMatrix& a) {
  const SparseMatrix t = a.transpose();
  double worst = 0.0;
  const SparseMatrix diff = a - t;
  for (Eigen::Index r = 0; r < diff.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(diff, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

}  // namespace gq::numeric

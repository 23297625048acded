#include "genquant/coords/geometry.hpp"

#include "genquant/error.hpp"

namespace gq::coords {

Jacobians jacobians(const CoordinateSystem& cs) {
  const Expr ju = sym::make_product(cs.scale_factors());
  return {ju, sym::pow(ju, -1)};
}

ChristoffelTable::ChristoffelTable(int dimension)
    : dim_(dimension), entries_(static_cast<std::size_t>(dimension * dimension * dimension), Expr(0)) {}

bool ChristoffelTable::all_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

Expr metric(const CoordinateSystem& cs, int i, int j) {
  if (i != j) return Expr(0);
  return sym::pow(cs.scale_factor(i), 2);
}

ChristoffelTable christoffel(const CoordinateSystem& cs) {
  const int n = cs.dimension();
  const auto names = cs.names();
  ChristoffelTable table(n);
  auto dg = [&](int a, int b, int c) { return sym::differentiate(metric(cs, a, b), names[static_cast<std::size_t>(c)]); };
  for (int k = 0; k < n; ++k) {
    const Expr inverse = sym::pow(metric(cs, k, k), -1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Expr bracket = dg(k, i, j) + dg(k, j, i) - dg(i, j, k);
        table.at(k, i, j) = sym::simplify(sym::expand(Expr(sym::Rational(1, 2)) * inverse * bracket));
      }
    }
  }
  return table;
}

std::vector<Expr> metric_compatibility_residuals(const CoordinateSystem& cs, const ChristoffelTable& gamma) {
  const int n = cs.dimension();
  const auto names = cs.names();
  std::vector<Expr> out;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Expr r = sym::differentiate(metric(cs, i, j), names[static_cast<std::size_t>(k)]);
        for (int l = 0; l < n; ++l) {
          r -= gamma(l, k, i) * metric(cs, l, j);
          r -= gamma(l, k, j) * metric(cs, i, l);
        }
        out.push_back(sym::simplify(sym::expand(r)));
      }
    }
  }
  return out;
}

std::vector<Expr> physical_momentum(const CoordinateSystem& cs, const std::vector<Expr>& momenta) {
  if (momenta.size() != static_cast<std::size_t>(cs.dimension())) {
    throw GeometryError("momentum list does not match the dimension of " + cs.name());
  }
  std::vector<Expr> out;
  for (int i = 0; i < cs.dimension(); ++i) out.push_back(momenta[static_cast<std::size_t>(i)] / cs.scale_factor(i));
  return out;
}

std::vector<Expr> momentum_in_target_chart(const CoordinateSystem& cs, const std::vector<Expr>& momenta) {
  if (!cs.has_map()) throw GeometryError(cs.name() + " has no embedding map");
  const auto components = physical_momentum(cs, momenta);
  std::vector<Expr> out;
  for (std::size_t a = 0; a < cs.map().size(); ++a) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < components.size(); ++i) terms.push_back(components[i] * cs.unit_vectors()[i][a]);
    out.push_back(sym::simplify(sym::make_sum(terms)));
  }
  return out;
}

}  // namespace gq::coords

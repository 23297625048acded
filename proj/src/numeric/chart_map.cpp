#include "genquant/numeric/chart_map.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "genquant/error.hpp"

namespace gq::numeric {

ChartMap::ChartMap(const coords::CoordinateSystem& cs) : coordinates_(cs.coordinates()) {
  if (!cs.has_map()) throw GeometryError(cs.name() + " has no embedding map");
  const auto names = cs.names();
  for (const auto& component : cs.map()) {
    forward_.emplace_back(component, names);
    std::vector<sym::CompiledExpr> row;
    for (const auto& u : names) row.emplace_back(sym::differentiate(component, u), names);
    jacobian_.push_back(std::move(row));
  }
  // Interior lattice of starting points, three per coordinate.
  const std::size_t n = coordinates_.size();
  std::vector<std::vector<double>> per_axis;
  for (const auto& c : coordinates_) {
    const auto iv = coords::interior_interval(c.range);
    per_axis.push_back({iv.lo + 0.2 * (iv.hi - iv.lo), 0.5 * (iv.lo + iv.hi), iv.lo + 0.8 * (iv.hi - iv.lo)});
  }
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<double> start(n);
    for (std::size_t d = 0; d < n; ++d) start[d] = per_axis[d][idx[d]];
    starts_.push_back(std::move(start));
    std::size_t d = 0;
    while (d < n && ++idx[d] == per_axis[d].size()) idx[d++] = 0;
    if (d == n) break;
  }
}

std::vector<double> ChartMap::forward(std::span<const double> u) const {
  std::vector<double> x;
  x.reserve(forward_.size());
  for (const auto& f : forward_) x.push_back(f(u));
  return x;
}

std::optional<std::vector<double>> ChartMap::newton(std::span<const double> x, std::vector<double> u) const {
  const auto n = static_cast<Eigen::Index>(forward_.size());
  double scale = 1.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd residual(n);
    for (Eigen::Index a = 0; a < n; ++a) residual(a) = forward_[static_cast<std::size_t>(a)](u) - x[static_cast<std::size_t>(a)];
    if (residual.norm() <= 1e-13 * scale) {
      for (std::size_t d = 0; d < u.size(); ++d) {
        const auto& range = coordinates_[d].range;
        if (range.periodic) {
          const double period = range.hi - range.lo;
          u[d] = range.lo + std::fmod(std::fmod(u[d] - range.lo, period) + period, period);
        }
        if (!range.contains(u[d]) && !(range.periodic && u[d] == range.lo)) return std::nullopt;
      }
      return u;
    }
    Eigen::MatrixXd jac(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) jac(a, b) = jacobian_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)](u);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible()) return std::nullopt;
    const Eigen::VectorXd step = lu.solve(residual);
    // Stay inside the open ranges, then halve the step until the residual decreases.
    double t = 1.0;
    for (std::size_t d = 0; d < u.size(); ++d) {
      const auto& range = coordinates_[d].range;
      const double s = step(static_cast<Eigen::Index>(d));
      if (range.periodic || s == 0.0) continue;
      const double room = s > 0 ? u[d] - range.lo : range.hi - u[d];
      if (std::isfinite(room)) t = std::min(t, 0.99 * room / std::abs(s));
    }
    std::vector<double> trial(u.size());
    for (int k = 0; k < 30; ++k) {
      for (std::size_t d = 0; d < u.size(); ++d) trial[d] = u[d] - t * step(static_cast<Eigen::Index>(d));
      double norm = 0.0;
      for (Eigen::Index a = 0; a < n; ++a) {
        const double r = forward_[static_cast<std::size_t>(a)](trial) - x[static_cast<std::size_t>(a)];
        norm += r * r;
      }
      if (std::sqrt(norm) < residual.norm() || k == 29) break;
      t *= 0.5;
    }
    u = trial;
    for (double v : u) {
      if (!std::isfinite(v)) return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<double>> ChartMap::inverse(std::span<const double> x, const std::vector<double>* guess) const {
  if (guess) {
    if (auto u = newton(x, *guess)) return u;
  }
  for (const auto& start : starts_) {
    if (auto u = newton(x, start)) return u;
  }
  return std::nullopt;
}

}  // namespace gq::numeric

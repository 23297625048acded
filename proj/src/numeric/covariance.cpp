#include <cmath>
#include <random>

#include "genquant/error.hpp"
#include "genquant/numeric/spectrum.hpp"
#include "genquant/symcore/evaluate.hpp"

namespace gq::numeric {

CovarianceReport covariance_check(const coords::CoordinateSystem& a, const coords::CoordinateSystem& b,
                                  const sym::Expr& v, const sym::Expr& psi, int n_points, std::uint64_t seed,
                                  const Units& units) {
  if (!b.has_map() || b.map_targets() != a.names()) {
    throw GeometryError(b.name() + " does not map into the coordinates of " + a.name());
  }
  sym::Bindings to_b;
  for (std::size_t i = 0; i < b.map().size(); ++i) to_b[b.map_targets()[i]] = b.map()[i];
  const sym::Expr ha = quantize::hamilton_operator(a, v).apply(psi);
  const sym::Expr hb = quantize::hamilton_operator(b, sym::substitute(v, to_b)).apply(sym::substitute(psi, to_b));

  sym::NumericEnv base;
  for (const auto& [name, value] : units.constants()) base.symbols[name] = value;
  const auto domain = b.sample_domain();
  std::mt19937_64 rng(seed);
  CovarianceReport report;
  report.system_a = a.name();
  report.system_b = b.name();
  const int max_attempts = 100 * std::max(n_points, 1);
  for (int attempt = 0; attempt < max_attempts && report.points < n_points; ++attempt) {
    sym::NumericEnv env_b = base;
    sym::NumericEnv env_a = base;
    bool inside = true;
    std::vector<double> u;
    for (const auto& c : b.coordinates()) {
      const auto iv = domain.of(c.name);
      const double value = std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
      u.push_back(value);
      env_b.symbols[c.name] = value;
    }
    for (std::size_t i = 0; i < b.map().size(); ++i) {
      const double x = sym::evaluate_real(b.map()[i], env_b);
      inside = inside && a.coordinates()[i].range.contains(x);
      env_a.symbols[a.coordinates()[i].name] = x;
    }
    double value_a = NAN;
    double value_b = NAN;
    if (inside) {
      try {
        value_a = sym::evaluate_real(ha, env_a);
        value_b = sym::evaluate_real(hb, env_b);
      } catch (const EvaluationError&) {
        inside = false;
      }
    }
    if (!inside || !std::isfinite(value_a) || !std::isfinite(value_b)) {
      ++report.rejected;
      continue;
    }
    const double scale = std::max(std::abs(value_a), std::abs(value_b));
    const double deviation = scale < 1e-12 ? std::abs(value_a - value_b) : std::abs(value_a - value_b) / scale;
    report.max_relative_deviation = std::max(report.max_relative_deviation, deviation);
    ++report.points;
  }
  if (report.points < n_points) {
    throw GeometryError("only " + std::to_string(report.points) + " of " + std::to_string(n_points) +
                        " sample points were usable");
  }
  return report;
}

}  // namespace gq::numeric

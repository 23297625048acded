#include "genquant/coords/coordinate_system.hpp"

#include <cmath>
#include <random>
#include <set>

#include "genquant/error.hpp"
#include "genquant/symcore/evaluate.hpp"

namespace gq::coords {

using sym::Rational;

bool CoordinateRange::finite() const { return std::isfinite(lo) && std::isfinite(hi); }

sym::Interval interior_interval(const CoordinateRange& range) {
  const bool lo_finite = std::isfinite(range.lo);
  const bool hi_finite = std::isfinite(range.hi);
  if (lo_finite && hi_finite) {
    const double margin = 0.05 * (range.hi - range.lo);
    return {range.lo + margin, range.hi - margin};
  }
  if (lo_finite) return {range.lo + 0.25, range.lo + 2.0};
  if (hi_finite) return {range.hi - 2.0, range.hi - 0.25};
  return {-1.5, 1.5};
}

namespace {

// Signs of e over random points of the domain: +1 all positive, -1 all
// negative, 0 mixed or never evaluable.
int sampled_sign(const Expr& e, const sym::SampleDomain& domain, int samples = 48) {
  std::mt19937_64 rng(sym::default_seed());
  const auto symbols = sym::free_symbols(e);
  int positive = 0;
  int negative = 0;
  for (int s = 0; s < samples; ++s) {
    sym::NumericEnv env;
    for (const auto& name : symbols) {
      if (name == "pi") continue;
      const auto iv = domain.of(name);
      std::uniform_real_distribution<double> dist(iv.lo, iv.hi);
      env.symbols[name] = dist(rng);
    }
    try {
      const double v = sym::evaluate_real(e, env);
      if (!std::isfinite(v)) continue;
      if (v > 0) ++positive;
      if (v < 0) ++negative;
    } catch (const EvaluationError&) {
    }
  }
  if (positive > 0 && negative == 0) return 1;
  if (negative > 0 && positive == 0) return -1;
  return 0;
}

}  // namespace

Expr positive_sqrt(const Expr& squared, const sym::SampleDomain& domain) {
  auto [coeff, rest] = sym::split_coefficient(squared);
  if (coeff.is_negative() || coeff.is_zero()) {
    throw GeometryError("squared scale factor " + sym::to_infix(squared) + " is not positive");
  }
  std::vector<Expr> factors;
  if (auto root = Rational::exact_pow(coeff, Rational(1, 2))) {
    factors.emplace_back(*root);
  } else {
    factors.push_back(sym::pow(Expr(coeff), Rational(1, 2)));
  }
  for (const auto& f : sym::factors_of(rest)) {
    if (f.is_one()) continue;
    if (f.is(sym::Kind::Power)) {
      const Rational e = f.exponent();
      if (e.is_integer() && e.num() % 2 == 0) {
        factors.push_back(sym::pow(f.base(), Rational(e.num() / 2)));
        continue;
      }
      factors.push_back(sym::pow(f.base(), e * Rational(1, 2)));
      continue;
    }
    factors.push_back(sym::pow(f, Rational(1, 2)));
  }
  const Expr candidate = sym::make_product(factors);
  switch (sampled_sign(candidate, domain)) {
    case 1:
      return candidate;
    case -1:
      return -candidate;
    default:
      return sym::pow(squared, Rational(1, 2));
  }
}

Frame frame_and_scale_factors(const std::vector<Expr>& map, const std::vector<std::string>& coordinates,
                              const sym::SampleDomain& domain) {
  if (coordinates.size() < 2 || coordinates.size() > 3 || map.size() != coordinates.size()) {
    throw GeometryError("a map needs as many components as coordinates (2 or 3), got " +
                        std::to_string(map.size()) + " for " + std::to_string(coordinates.size()));
  }
  const std::size_t n = coordinates.size();
  std::vector<std::vector<Expr>> tangents(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& component : map) tangents[i].push_back(sym::differentiate(component, coordinates[i]));
  }
  auto dot = [&](std::size_t i, std::size_t j) {
    std::vector<Expr> terms;
    for (std::size_t a = 0; a < n; ++a) terms.push_back(tangents[i][a] * tangents[j][a]);
    return sym::simplify(sym::expand(sym::make_sum(terms)));
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Expr g = dot(i, j);
      sym::EquivalenceOptions options;
      options.domain = domain;
      if (!sym::check_equivalent(g, Expr(0), options).equivalent) {
        throw OrthogonalityError("tangent vectors of " + coordinates[i] + " and " + coordinates[j] +
                                     " are not orthogonal: g = " + sym::to_infix(g),
                                 static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  Frame frame;
  for (std::size_t i = 0; i < n; ++i) {
    const Expr h = positive_sqrt(dot(i, i), domain);
    frame.scale_factors.push_back(h);
    std::vector<Expr> e;
    for (const auto& t : tangents[i]) e.push_back(t / h);
    frame.unit_vectors.push_back(std::move(e));
  }
  return frame;
}

std::vector<std::string> CoordinateSystem::names() const {
  std::vector<std::string> out;
  for (const auto& c : coordinates_) out.push_back(c.name);
  return out;
}

int CoordinateSystem::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < coordinates_.size(); ++i) {
    if (coordinates_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

void CoordinateSystem::validate_coordinates() const {
  if (coordinates_.size() < 2 || coordinates_.size() > 3) {
    throw GeometryError("coordinate system '" + name_ + "' must have 2 or 3 coordinates");
  }
  std::set<std::string> seen;
  for (const auto& c : coordinates_) {
    if (!seen.insert(c.name).second) throw GeometryError("duplicate coordinate '" + c.name + "'");
    if (!(c.range.lo < c.range.hi)) throw GeometryError("empty range for coordinate '" + c.name + "'");
    if (c.range.periodic && !c.range.finite()) {
      throw GeometryError("periodic coordinate '" + c.name + "' needs a finite range");
    }
  }
}

void CoordinateSystem::check_positive_scale_factors() const {
  const auto domain = sample_domain();
  for (std::size_t i = 0; i < scale_factors_.size(); ++i) {
    if (sampled_sign(scale_factors_[i], domain) != 1) {
      throw GeometryError("scale factor h" + std::to_string(i + 1) + " = " + sym::to_infix(scale_factors_[i]) +
                          " is not positive on the interior of '" + name_ + "'");
    }
  }
}

CoordinateSystem CoordinateSystem::from_map(std::string name, std::vector<Coordinate> coordinates,
                                            std::vector<std::string> targets, std::vector<Expr> map) {
  CoordinateSystem cs;
  cs.name_ = std::move(name);
  cs.coordinates_ = std::move(coordinates);
  cs.validate_coordinates();
  if (targets.size() != map.size()) throw GeometryError("map target names do not match the map components");
  cs.targets_ = std::move(targets);
  cs.map_ = std::move(map);
  Frame frame = frame_and_scale_factors(cs.map_, cs.names(), cs.sample_domain());
  cs.scale_factors_ = std::move(frame.scale_factors);
  cs.unit_vectors_ = std::move(frame.unit_vectors);
  cs.check_positive_scale_factors();
  return cs;
}

CoordinateSystem CoordinateSystem::from_scale_factors(std::string name, std::vector<Coordinate> coordinates,
                                                      std::vector<Expr> scale_factors) {
  CoordinateSystem cs;
  cs.name_ = std::move(name);
  cs.coordinates_ = std::move(coordinates);
  cs.validate_coordinates();
  if (scale_factors.size() != cs.coordinates_.size()) {
    throw GeometryError("expected " + std::to_string(cs.coordinates_.size()) + " scale factors, got " +
                        std::to_string(scale_factors.size()));
  }
  for (auto& h : scale_factors) h = sym::simplify(h);
  cs.scale_factors_ = std::move(scale_factors);
  cs.orthogonality_assumed_ = true;
  cs.check_positive_scale_factors();
  return cs;
}

bool CoordinateSystem::is_identity_chart() const {
  if (!has_map()) return false;
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (targets_[i] != coordinates_[i].name) return false;
    if (!(map_[i] == sym::symbol(coordinates_[i].name))) return false;
  }
  return true;
}

sym::SampleDomain CoordinateSystem::sample_domain() const {
  sym::SampleDomain domain;
  for (const auto& c : coordinates_) domain.intervals[c.name] = interior_interval(c.range);
  return domain;
}

}  // namespace gq::coords

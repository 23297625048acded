#include <doctest.h>

#include <cmath>
#include <random>

#include "genquant/coords/builtin.hpp"
#include "genquant/coords/geometry.hpp"
#include "genquant/error.hpp"
#include "genquant/symcore/evaluate.hpp"

using namespace gq;
using namespace gq::sym;
using coords::Coordinate;
using coords::CoordinateRange;
using coords::CoordinateSystem;

namespace {

const Expr r = symbol("r");
const Expr theta = symbol("theta");
const Expr phi = symbol("phi");
const Expr rho = symbol("rho");

std::vector<CoordinateSystem> all_builtins() {
  return {coords::cartesian(), coords::spherical(), coords::cylindrical(), coords::polar2d()};
}

double value_at(const Expr& e, const std::vector<std::string>& names, const std::vector<double>& u) {
  NumericEnv env;
  for (std::size_t i = 0; i < names.size(); ++i) env.symbols[names[i]] = u[i];
  return evaluate_real(e, env);
}

// Christoffel symbols of a diagonal metric from central differences of g_ii.
double numeric_gamma(const CoordinateSystem& cs, int k, int i, int j, const std::vector<double>& u) {
  const auto names = cs.names();
  const double h = 1e-5;
  auto g = [&](int a, const std::vector<double>& p) {
    const double s = value_at(cs.scale_factor(a), names, p);
    return s * s;
  };
  auto dg = [&](int a, int wrt) {
    auto plus = u, minus = u;
    plus[static_cast<std::size_t>(wrt)] += h;
    minus[static_cast<std::size_t>(wrt)] -= h;
    return (g(a, plus) - g(a, minus)) / (2 * h);
  };
  double sum = 0.0;
  if (k == i) sum += dg(k, j);
  if (k == j) sum += dg(k, i);
  if (i == j) sum -= dg(i, k);
  return 0.5 * sum / g(k, u);
}

}  // namespace

TEST_SUITE("frames") {
  TEST_CASE("spherical scale factors") {
    const auto cs = coords::spherical();
    REQUIRE(cs.dimension() == 3);
    CHECK(cs.scale_factor(0) == Expr(1));
    CHECK(cs.scale_factor(1) == r);
    CHECK(cs.scale_factor(2) == r * sin(theta));
    CHECK_FALSE(cs.orthogonality_assumed());
  }

  TEST_CASE("identity map gives unit factors and cartesian axes") {
    const auto cs = coords::cartesian();
    for (int i = 0; i < 3; ++i) CHECK(cs.scale_factor(i).is_one());
    const auto& e = cs.unit_vectors();
    REQUIRE(e.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t a = 0; a < 3; ++a) CHECK(e[i][a] == Expr(i == a ? 1 : 0));
    }
    CHECK(cs.is_identity_chart());
  }

  TEST_CASE("cylindrical scale factors") {
    const auto cs = coords::cylindrical();
    CHECK(cs.scale_factor(0).is_one());
    CHECK(cs.scale_factor(1) == rho);
    CHECK(cs.scale_factor(2).is_one());
  }

  TEST_CASE("unit vectors are orthonormal") {
    for (const auto& cs : all_builtins()) {
      const auto& e = cs.unit_vectors();
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = 0; j < e.size(); ++j) {
          Expr dot(0);
          for (std::size_t a = 0; a < e[i].size(); ++a) dot += e[i][a] * e[j][a];
          CHECK_MESSAGE(equivalent(dot, Expr(i == j ? 1 : 0), 1e-9, cs.sample_domain()), cs.name());
        }
      }
    }
  }

  TEST_CASE("a skew map names the offending pair") {
    const Expr u = symbol("u"), v = symbol("v");
    try {
      coords::frame_and_scale_factors({u + v, v}, {"u", "v"});
      FAIL("expected an orthogonality error");
    } catch (const OrthogonalityError& e) {
      const std::string what = e.what();
      CHECK(what.find('u') != std::string::npos);
      CHECK(what.find('v') != std::string::npos);
    }
  }

  TEST_CASE("dimension and range validation") {
    const Expr u = symbol("u");
    CHECK_THROWS_AS(CoordinateSystem::from_scale_factors("line", {{"u", {}}}, {Expr(1)}), GeometryError);
    CHECK_THROWS_AS(CoordinateSystem::from_scale_factors("flat", {{"u", {}}, {"u", {}}}, {Expr(1), Expr(1)}),
                    GeometryError);
    CHECK_THROWS_AS(CoordinateSystem::from_scale_factors("flat", {{"u", {1.0, 0.0}}, {"w", {}}}, {Expr(1), Expr(1)}),
                    GeometryError);
    CHECK_THROWS_AS(CoordinateSystem::from_map("bad", {{"u", {}}, {"w", {}}}, {"x", "y"}, {u}), GeometryError);
  }

  TEST_CASE("scale factors must be positive on the interior") {
    const std::vector<Coordinate> c{{"u", {0.0, 1.0}}, {"w", {0.0, 1.0}}};
    CHECK_THROWS_AS(CoordinateSystem::from_scale_factors("neg", c, {Expr(1), -symbol("u")}), GeometryError);
    const auto ok = CoordinateSystem::from_scale_factors("ok", c, {Expr(1), symbol("u")});
    CHECK(ok.orthogonality_assumed());
  }

  TEST_CASE("positive square roots halve even powers") {
    coords::CoordinateRange positive{0.0, 10.0};
    SampleDomain domain;
    domain.intervals["r"] = coords::interior_interval(positive);
    domain.intervals["theta"] = coords::interior_interval({0.0, M_PI});
    CHECK(coords::positive_sqrt(pow(r, 2) * pow(sin(theta), 2), domain) == r * sin(theta));
  }
}

TEST_SUITE("jacobians") {
  TEST_CASE("spherical momentum Jacobian") {
    const auto jac = coords::jacobians(coords::spherical());
    CHECK(jac.momentum == Expr(1) / (pow(r, 2) * sin(theta)));
    CHECK(jac.coordinate == pow(r, 2) * sin(theta));
  }

  TEST_CASE("cartesian and cylindrical") {
    const auto cart = coords::jacobians(coords::cartesian());
    CHECK(cart.coordinate.is_one());
    CHECK(cart.momentum.is_one());
    CHECK(coords::jacobians(coords::cylindrical()).coordinate == rho);
  }

  TEST_CASE("reciprocity holds exactly for every system") {
    for (const auto& cs : all_builtins()) {
      const auto jac = coords::jacobians(cs);
      CHECK_MESSAGE(simplify(jac.coordinate * jac.momentum).is_one(), cs.name());
    }
  }
}

TEST_SUITE("christoffel") {
  TEST_CASE("flat cartesian metric") { CHECK(coords::christoffel(coords::cartesian()).all_zero()); }

  TEST_CASE("spherical entries") {
    const auto g = coords::christoffel(coords::spherical());
    CHECK(g(0, 1, 1) == -r);
    CHECK(g(1, 0, 1) == pow(r, -1));
    CHECK(equivalent(g(2, 1, 2), cot(theta)));
    CHECK(g(0, 2, 2) == -r * pow(sin(theta), 2));
    CHECK(g(1, 2, 2) == -sin(theta) * cos(theta));
    CHECK(g(2, 0, 2) == pow(r, -1));
  }

  TEST_CASE("polar entries") {
    const auto g = coords::christoffel(coords::polar2d());
    CHECK(g(0, 1, 1) == -r);
    CHECK(g(1, 0, 1) == pow(r, -1));
    CHECK(g(0, 0, 0).is_zero());
    CHECK(g(1, 1, 1).is_zero());
  }

  TEST_CASE("symmetric in the lower indices") {
    for (const auto& cs : all_builtins()) {
      const auto g = coords::christoffel(cs);
      const int n = cs.dimension();
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) CHECK(to_prefix(g(k, i, j)) == to_prefix(g(k, j, i)));
        }
      }
    }
  }

  TEST_CASE("agrees with finite differences of the metric") {
    std::mt19937_64 rng(42);
    for (const auto& cs : all_builtins()) {
      const auto g = coords::christoffel(cs);
      const auto names = cs.names();
      const auto domain = cs.sample_domain();
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> u;
        for (const auto& n : names) {
          const auto iv = domain.of(n);
          u.push_back(std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng));
        }
        const int n = cs.dimension();
        for (int k = 0; k < n; ++k) {
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
              const double exact = value_at(g(k, i, j), names, u);
              CHECK(exact == doctest::Approx(numeric_gamma(cs, k, i, j, u)).epsilon(1e-6).scale(1.0));
            }
          }
        }
      }
    }
  }

  TEST_CASE("metric compatibility") {
    for (const auto& cs : all_builtins()) {
      for (const Expr& residual : coords::metric_compatibility_residuals(cs, coords::christoffel(cs))) {
        CHECK_MESSAGE(equivalent(residual, Expr(0), 1e-9, cs.sample_domain()), cs.name(), ": ", to_infix(residual));
      }
    }
  }
}

TEST_SUITE("momentum") {
  TEST_CASE("spherical physical components") {
    const auto cs = coords::spherical();
    const Expr pr = symbol("p_r"), pt = symbol("p_theta"), pp = symbol("p_phi");
    const auto phys = coords::physical_momentum(cs, {pr, pt, pp});
    REQUIRE(phys.size() == 3);
    CHECK(equivalent(phys[0], pr));
    CHECK(equivalent(phys[1], pt / r));
    CHECK(equivalent(phys[2], pp / (r * sin(theta)), 1e-9, cs.sample_domain()));
  }

  TEST_CASE("cartesian components of the spherical momentum") {
    const auto cs = coords::spherical();
    const Expr pr = symbol("p_r"), pt = symbol("p_theta"), pp = symbol("p_phi");
    const auto p = coords::momentum_in_target_chart(cs, {pr, pt, pp});
    REQUIRE(p.size() == 3);
    const Expr px = pr * sin(theta) * cos(phi) + (pt / r) * cos(theta) * cos(phi) - (pp / r) * (sin(phi) / sin(theta));
    const Expr py = pr * sin(theta) * sin(phi) + (pt / r) * cos(theta) * sin(phi) + (pp / r) * (cos(phi) / sin(theta));
    const Expr pz = pr * cos(theta) - (pt / r) * sin(theta);
    const auto domain = cs.sample_domain();
    CHECK(equivalent(p[0], px, 1e-9, domain));
    CHECK(equivalent(p[1], py, 1e-9, domain));
    CHECK(equivalent(p[2], pz, 1e-9, domain));
  }

  TEST_CASE("mismatched momentum lists and missing maps are rejected") {
    CHECK_THROWS_AS(coords::physical_momentum(coords::spherical(), {symbol("p")}), GeometryError);
    const auto no_map = CoordinateSystem::from_scale_factors("h", {{"u", {}}, {"w", {}}}, {Expr(1), Expr(1)});
    CHECK_THROWS_AS(coords::momentum_in_target_chart(no_map, {symbol("a"), symbol("b")}), GeometryError);
  }
}

TEST_SUITE("builtins") {
  TEST_CASE("lookup by name") {
    for (const auto name : coords::builtin_names()) {
      const auto cs = coords::builtin(name);
      REQUIRE(cs.has_value());
      CHECK(cs->name() == name);
    }
    CHECK_FALSE(coords::builtin("toroidal").has_value());
  }

  TEST_CASE("ranges") {
    const auto cs = coords::spherical();
    CHECK(cs.coordinates()[0].range.lo == 0.0);
    CHECK(std::isinf(cs.coordinates()[0].range.hi));
    CHECK(cs.coordinates()[2].range.periodic);
    CHECK(cs.coordinates()[2].range.hi == doctest::Approx(2 * M_PI));
  }
}

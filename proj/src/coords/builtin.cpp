#include "genquant/coords/builtin.hpp"

#include <cmath>
#include <numbers>

namespace gq::coords {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

Expr s(const char* name) { return sym::symbol(name); }

}  // namespace

CoordinateSystem cartesian() {
  return CoordinateSystem::from_map("cartesian",
                                    {{"x", {-kInf, kInf}}, {"y", {-kInf, kInf}}, {"z", {-kInf, kInf}}},
                                    {"x", "y", "z"}, {s("x"), s("y"), s("z")});
}

CoordinateSystem spherical() {
  const Expr r = s("r");
  const Expr theta = s("theta");
  const Expr phi = s("phi");
  return CoordinateSystem::from_map(
      "spherical", {{"r", {0, kInf}}, {"theta", {0, kPi}}, {"phi", {0, 2 * kPi, true}}}, {"x", "y", "z"},
      {r * sym::sin(theta) * sym::cos(phi), r * sym::sin(theta) * sym::sin(phi), r * sym::cos(theta)});
}

CoordinateSystem cylindrical() {
  const Expr rho = s("rho");
  const Expr phi = s("phi");
  return CoordinateSystem::from_map("cylindrical",
                                    {{"rho", {0, kInf}}, {"phi", {0, 2 * kPi, true}}, {"z", {-kInf, kInf}}},
                                    {"x", "y", "z"}, {rho * sym::cos(phi), rho * sym::sin(phi), s("z")});
}

CoordinateSystem polar2d() {
  const Expr r = s("r");
  const Expr theta = s("theta");
  return CoordinateSystem::from_map("polar2d", {{"r", {0, kInf}}, {"theta", {0, 2 * kPi, true}}}, {"x", "y"},
                                    {r * sym::cos(theta), r * sym::sin(theta)});
}

std::optional<CoordinateSystem> builtin(std::string_view name) {
  if (name == "cartesian") return cartesian();
  if (name == "spherical") return spherical();
  if (name == "cylindrical") return cylindrical();
  if (name == "polar2d") return polar2d();
  return std::nullopt;
}

std::vector<std::string_view> builtin_names() { return {"cartesian", "spherical", "cylindrical", "polar2d"}; }

}  // namespace gq::coords

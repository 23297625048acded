#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "genquant/coords/coordinate_system.hpp"

namespace gq::coords {

CoordinateSystem cartesian();  // x, y, z
CoordinateSystem spherical();  // r, theta, phi
CoordinateSystem cylindrical();  // rho, phi, z
CoordinateSystem polar2d();  // r, theta

std::optional<CoordinateSystem> builtin(std::string_view name);
std::vector<std::string_view> builtin_names();

}  // namespace gq::coords

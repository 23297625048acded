#include <cmath>
#include <fstream>
#include <sstream>

#include "genquant/cli/document.hpp"
#include "genquant/error.hpp"
#include "genquant/symcore/evaluate.hpp"

namespace gq::cli {

std::vector<std::string> CoordSysDocument::coordinate_names() const {
  std::vector<std::string> out;
  for (const auto& c : coordinates) out.push_back(c.name);
  return out;
}

coords::CoordinateSystem CoordSysDocument::system() const {
  std::vector<coords::Coordinate> coords;
  for (const auto& c : coordinates) {
    coords::CoordinateRange range;
    if (c.lo) range.lo = sym::evaluate_real(*c.lo, {});
    if (c.hi) range.hi = sym::evaluate_real(*c.hi, {});
    range.periodic = c.periodic;
    coords.push_back({c.name, range});
  }
  if (has_map()) return coords::CoordinateSystem::from_map(name, coords, map_targets, map);
  return coords::CoordinateSystem::from_scale_factors(name, coords, factors);
}

std::string CoordSysDocument::to_source() const {
  std::ostringstream out;
  out << "coordsys: " << name << ";\n";
  out << "coords: ";
  for (std::size_t i = 0; i < coordinates.size(); ++i) out << (i ? ", " : "") << coordinates[i].name;
  out << ";\n";
  std::vector<std::string> periodic;
  for (const auto& c : coordinates) {
    if (c.periodic) periodic.push_back(c.name);
    if (!c.lo && !c.hi) continue;
    out << "range " << c.name << ": (" << (c.lo ? sym::to_infix(*c.lo) : "-inf") << ", "
        << (c.hi ? sym::to_infix(*c.hi) : "inf") << ");\n";
  }
  if (!periodic.empty()) {
    out << "periodic: ";
    for (std::size_t i = 0; i < periodic.size(); ++i) out << (i ? ", " : "") << periodic[i];
    out << ";\n";
  }
  if (has_map()) {
    out << "map: ";
    for (std::size_t i = 0; i < map.size(); ++i) {
      out << (i ? ",\n     " : "") << map_targets[i] << " = " << sym::to_infix(map[i]);
    }
  } else {
    out << "factors: ";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      out << (i ? ", " : "") << "h" << i + 1 << " = " << sym::to_infix(factors[i]);
    }
  }
  out << ";\n";
  if (potential) out << "potential: " << sym::to_infix(*potential) << ";\n";
  return out.str();
}

CoordSysDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_document(text.str());
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.message(), e.position(), path.string());
  } catch (const SemanticError& e) {
    throw SemanticError(e.message(), e.position(), path.string());
  }
}

}  // namespace gq::cli

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "genquant/coords/coordinate_system.hpp"

namespace gq::cli {

struct CoordinateDecl {
  std::string name;
  /// Range bounds as exact constants; nullopt stands for -inf / inf.
  std::optional<sym::Expr> lo;
  std::optional<sym::Expr> hi;
  bool periodic = false;

  bool operator==(const CoordinateDecl&) const = default;
};

/// Contents of a `.gq` file:
///
///     coordsys: spherical;
///     coords: r, theta, phi;
///     range r: (0, inf);
///     range theta: (0, pi);
///     range phi: (0, 2*pi);
///     periodic: phi;
///     map: x = r*sin(theta)*cos(phi), y = r*sin(theta)*sin(phi), z = r*cos(theta);
///     potential: V(r);
///
/// Either `map` or `factors: h1 = ..., h2 = ..., h3 = ...;` (labels optional)
/// must be present, not both. A periodic coordinate without a range gets
/// (0, 2*pi); a document without `coordsys` is named "unnamed".
struct CoordSysDocument {
  std::string name;
  std::vector<CoordinateDecl> coordinates;
  std::vector<std::string> map_targets;
  std::vector<sym::Expr> map;
  std::vector<sym::Expr> factors;
  std::optional<sym::Expr> potential;

  bool has_map() const { return !map.empty(); }
  std::vector<std::string> coordinate_names() const;
  coords::CoordinateSystem system() const;
  /// Canonical source text; parsing it yields an equal document.
  std::string to_source() const;

  bool operator==(const CoordSysDocument&) const = default;
};

/// Throws SyntaxError (position and expected tokens) or SemanticError
/// (unknown symbol, duplicate coordinate, missing or conflicting blocks).
CoordSysDocument parse_document(std::string_view source);

/// Reads and parses a file; error messages are prefixed with the path.
CoordSysDocument load_document(const std::filesystem::path& path);

/// Parses a standalone expression. Identifiers must be in `allowed` (or be
/// pi); calls of names other than sin, cos, tan, cot, exp, log and sqrt
/// denote undetermined functions of allowed symbols, such as V(r).
sym::Expr parse_expression(std::string_view text, const std::set<std::string>& allowed);

}  // namespace gq::cli

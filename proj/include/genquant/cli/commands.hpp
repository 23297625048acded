#pragma once

#include <optional>
#include <string>
#include <vector>

#include "genquant/cli/document.hpp"
#include "genquant/cli/render.hpp"
#include "genquant/numeric/spectrum.hpp"

namespace gq::cli {

struct CommandOptions {
  std::string command;  // derive, verify, spectrum or compare
  /// One document for derive, verify and spectrum; two (a, b) for compare.
  std::vector<CoordSysDocument> documents;
  /// Overrides the documents' potential blocks.
  std::optional<std::string> potential;
  /// Used by compare: clusters pass when every relative delta is below tol.
  double tol = 0.02;
  numeric::SpectrumOptions spectrum;
};

/// Runs one pipeline command. Module errors propagate to the caller.
///
/// derive emits scale factors, Jacobians, Christoffel symbols, the Liouville
/// and density equations, the operator and the Schroedinger equation; verify
/// checks orthogonality, Jacobian reciprocity, metric compatibility, the
/// derivation chain and the Madelung consistency; spectrum lists the lowest
/// levels; compare runs the spectrum in both systems and aligns the levels.
Report run_command(const CommandOptions& options);

/// 0 when every check passed, 1 otherwise.
int exit_code(const Report& report);

/// Potential for a system: the override or the document block, with
/// symbols of the chart the map lands in substituted. Without either, the
/// undetermined V(u) of the coordinates.
sym::Expr document_potential(const CoordSysDocument& doc, const std::optional<std::string>& override_text,
                             const numeric::Units& units = {});

}  // namespace gq::cli

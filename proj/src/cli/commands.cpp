#include "genquant/cli/commands.hpp"

#include <algorithm>
#include <cstdio>

#include "genquant/classical/classical.hpp"
#include "genquant/coords/builtin.hpp"
#include "genquant/coords/geometry.hpp"
#include "genquant/error.hpp"

namespace gq::cli {

using coords::CoordinateSystem;
using sym::Expr;

namespace {

std::vector<CoordinateSystem> builtin_charts() {
  return {coords::cartesian(), coords::spherical(), coords::cylindrical(), coords::polar2d()};
}

std::set<std::string> constants(const numeric::Units& units) {
  std::set<std::string> out{classical::kHbar, classical::kMass};
  for (const auto& [name, value] : units.parameters) out.insert(name);
  return out;
}

std::set<std::string> own_symbols(const CoordSysDocument& doc, const numeric::Units& units) {
  auto out = constants(units);
  for (const auto& c : doc.coordinates) out.insert(c.name);
  out.insert(doc.map_targets.begin(), doc.map_targets.end());
  return out;
}

// Potential text for numeric commands may use any known chart's coordinates.
Expr numeric_potential(const std::vector<CoordSysDocument>& docs, const std::optional<std::string>& text,
                       const numeric::Units& units) {
  if (!text) {
    if (docs.front().potential) return *docs.front().potential;
    throw Error("a potential is required (--potential or a potential block in " + docs.front().name + ")");
  }
  std::set<std::string> allowed = constants(units);
  for (const auto& doc : docs) {
    const auto own = own_symbols(doc, units);
    allowed.insert(own.begin(), own.end());
  }
  for (const auto& cs : builtin_charts()) {
    for (const auto& n : cs.names()) allowed.insert(n);
  }
  return parse_expression(*text, allowed);
}

std::string system_label(const CoordSysDocument& doc) { return doc.name; }

Report derive(const CoordSysDocument& doc, const std::optional<std::string>& potential_text,
              const numeric::Units& units) {
  const CoordinateSystem cs = doc.system();
  const Expr v = document_potential(doc, potential_text, units);
  Report report;
  report.command = "derive";
  report.system = system_label(doc);
  report.notes.push_back("potential: " + sym::to_infix(v));
  const auto names = cs.names();
  for (int i = 0; i < cs.dimension(); ++i) {
    report.equations.push_back(make_equation("scale factor", sym::symbol("h_" + names[static_cast<std::size_t>(i)]),
                                             cs.scale_factor(i)));
  }
  const auto jac = coords::jacobians(cs);
  report.equations.push_back(make_equation("coordinate Jacobian", sym::symbol("J_u"), jac.coordinate));
  report.equations.push_back(make_equation("momentum Jacobian", sym::symbol("J_p"), jac.momentum));

  const auto gamma = coords::christoffel(cs);
  if (gamma.all_zero()) {
    report.equations.push_back({"Christoffel symbols", "Gamma", "0", "\\Gamma", "0"});
  }
  for (int k = 0; k < cs.dimension(); ++k) {
    for (int i = 0; i < cs.dimension(); ++i) {
      for (int j = i; j < cs.dimension(); ++j) {
        if (gamma(k, i, j).is_zero()) continue;
        const auto& uk = names[static_cast<std::size_t>(k)];
        const auto& ui = names[static_cast<std::size_t>(i)];
        const auto& uj = names[static_cast<std::size_t>(j)];
        const auto lx = [](const std::string& n) { return sym::to_latex(sym::symbol(n)); };
        report.equations.push_back({"Christoffel symbol", "Gamma^" + uk + "_" + ui + "," + uj,
                                    sym::to_infix(gamma(k, i, j)), "\\Gamma^{" + lx(uk) + "}_{" + lx(ui) + " " + lx(uj) + "}",
                                    sym::to_latex(gamma(k, i, j))});
      }
    }
  }

  const auto h = classical::classical_hamiltonian(cs, v);
  report.equations.push_back(make_equation("classical Hamiltonian", sym::symbol("H"), h.total()));
  const auto liouville = classical::liouville_equation(h);
  report.equations.push_back(make_equation("Liouville equation", liouville.lhs(), Expr(0)));
  const auto density = quantize::wigner_transform(liouville, cs);
  report.equations.push_back(make_equation("density equation", density.lhs(), density.rhs()));
  const auto op = quantize::hamilton_operator(cs, v);
  report.equations.push_back(operator_equation(op));
  report.equations.push_back(schroedinger_equation(op));
  return report;
}

Report verify(const CoordSysDocument& doc, const std::optional<std::string>& potential_text,
              const numeric::Units& units) {
  Report report;
  report.command = "verify";
  report.system = system_label(doc);
  std::optional<CoordinateSystem> built;
  try {
    built = doc.system();
    report.checks.push_back({"orthogonality", true, 0.0, doc.has_map() ? "" : "assumed for given scale factors"});
  } catch (const OrthogonalityError& e) {
    report.checks.push_back({"orthogonality", false, 1.0, e.what()});
    return report;
  }
  const CoordinateSystem& cs = *built;
  const Expr v = document_potential(doc, potential_text, units);
  report.notes.push_back("potential: " + sym::to_infix(v));
  sym::EquivalenceOptions eq;
  eq.domain = cs.sample_domain();

  const auto jac = coords::jacobians(cs);
  const auto reciprocity = sym::check_equivalent(jac.coordinate * jac.momentum, Expr(1), eq);
  report.checks.push_back({"Jacobian reciprocity", reciprocity.equivalent, reciprocity.max_residual, ""});

  double metric_residual = 0.0;
  bool metric_ok = true;
  for (const auto& r : coords::metric_compatibility_residuals(cs, coords::christoffel(cs))) {
    const auto res = sym::check_equivalent(r, Expr(0), eq);
    metric_ok = metric_ok && res.equivalent;
    metric_residual = std::max(metric_residual, res.max_residual);
  }
  report.checks.push_back({"metric compatibility", metric_ok, metric_residual, ""});

  const auto h = classical::classical_hamiltonian(cs, v);
  const Expr hh = classical::poisson_bracket(h.total(), h.total(), h.space);
  report.checks.push_back({"energy conservation {H,H} = 0", hh.is_zero(), 0.0, hh.is_zero() ? "" : sym::to_infix(hh)});

  std::optional<quantize::MadelungSplit> split;
  try {
    const auto density = quantize::wigner_transform(classical::liouville_equation(h), cs);
    split = quantize::madelung_collect(density, quantize::amplitude_expansion(cs), cs, v);
    report.checks.push_back({"derivation chain", true, split->max_residual, ""});
  } catch (const SplitFailureError& e) {
    report.checks.push_back({"derivation chain", false, 1.0, std::string(e.what()) + ": " + e.residue()});
  } catch (const UnsupportedHamiltonianError& e) {
    report.checks.push_back({"derivation chain", false, 1.0, e.what()});
  }
  if (split) {
    const auto consistency = quantize::verify_consistency(cs, v, *split);
    for (const auto& part : consistency.parts) {
      report.checks.push_back({"consistency " + part.name, part.passed, part.residual, part.detail});
    }
  }
  return report;
}

Report spectrum(const CoordSysDocument& doc, const std::optional<std::string>& potential_text,
                const numeric::SpectrumOptions& options) {
  const CoordinateSystem cs = doc.system();
  const Expr v = numeric_potential({doc}, potential_text, options.units);
  std::vector<CoordinateSystem> charts{cs};
  for (auto& c : builtin_charts()) charts.push_back(std::move(c));
  const auto resolved = numeric::resolve_potential(cs, v, charts, options.units);
  const auto plan = numeric::default_plan(cs, resolved, options);
  const auto result = numeric::level_spectrum(cs, resolved, plan, options);
  Report report;
  report.command = "spectrum";
  report.system = system_label(doc);
  report.notes = {"potential: " + sym::to_infix(v) + " (" + resolved.route + ")", "grid: " + result.grid,
                  "method: " + result.method};
  for (const auto& c : result.clusters) report.spectra.push_back({c.value, c.multiplicity, ""});
  const int missing = options.levels - static_cast<int>(result.clusters.size());
  report.checks.push_back({"levels resolved", missing == 0, static_cast<double>(missing),
                           missing == 0 ? "" : "fewer distinct levels than requested on this grid"});
  return report;
}

Report compare(const CoordSysDocument& a, const CoordSysDocument& b, const std::optional<std::string>& potential_text,
               double tol, const numeric::SpectrumOptions& options) {
  const Expr v = numeric_potential({a, b}, potential_text, options.units);
  const auto result = numeric::compare_spectra(a.system(), b.system(), v, tol, options, builtin_charts());
  Report report;
  report.command = "compare";
  report.system = a.name + " vs " + b.name;
  report.notes = {"potential: " + sym::to_infix(v), a.name + " grid: " + result.a.grid,
                  a.name + " method: " + result.a.method, b.name + " grid: " + result.b.grid,
                  b.name + " method: " + result.b.method};
  for (const auto& c : result.a.clusters) report.spectra.push_back({c.value, c.multiplicity, a.name});
  for (const auto& c : result.b.clusters) report.spectra.push_back({c.value, c.multiplicity, b.name});
  report.deltas = result.deltas;
  report.checks.push_back({"level structure", !result.structural_mismatch, result.structural_mismatch ? 1.0 : 0.0,
                           result.mismatch});
  const double worst = result.deltas.empty() ? 0.0 : *std::max_element(result.deltas.begin(), result.deltas.end());
  const bool within = std::all_of(result.deltas.begin(), result.deltas.end(), [&](double d) { return d < tol; });
  char label[64];
  std::snprintf(label, sizeof label, "relative deltas below %g", tol);
  report.checks.push_back({label, within && !result.deltas.empty(), worst, ""});
  return report;
}

}  // namespace

Expr document_potential(const CoordSysDocument& doc, const std::optional<std::string>& override_text,
                        const numeric::Units& units) {
  Expr v;
  if (override_text) {
    v = parse_expression(*override_text, own_symbols(doc, units));
  } else if (doc.potential) {
    v = *doc.potential;
  } else {
    return quantize::symbolic_potential(doc.system());
  }
  if (doc.has_map()) {
    const auto names = doc.coordinate_names();
    bool uses_targets = false;
    for (const auto& t : doc.map_targets) {
      if (std::find(names.begin(), names.end(), t) == names.end() && sym::contains_symbol(v, t)) uses_targets = true;
    }
    if (uses_targets) {
      sym::Bindings bindings;
      for (std::size_t i = 0; i < doc.map.size(); ++i) bindings[doc.map_targets[i]] = doc.map[i];
      v = sym::simplify(sym::substitute(v, bindings));
    }
  }
  return v;
}

Report run_command(const CommandOptions& options) {
  const auto need = [&](std::size_t n) {
    if (options.documents.size() != n) {
      throw Error(options.command + " takes " + std::to_string(n) + " coordinate system document" + (n > 1 ? "s" : ""));
    }
  };
  if (options.command == "derive") {
    need(1);
    return derive(options.documents[0], options.potential, options.spectrum.units);
  }
  if (options.command == "verify") {
    need(1);
    return verify(options.documents[0], options.potential, options.spectrum.units);
  }
  if (options.command == "spectrum") {
    need(1);
    return spectrum(options.documents[0], options.potential, options.spectrum);
  }
  if (options.command == "compare") {
    need(2);
    return compare(options.documents[0], options.documents[1], options.potential, options.tol, options.spectrum);
  }
  throw Error("unknown command " + options.command);
}

int exit_code(const Report& report) { return report.passed() ? 0 : 1; }

}  // namespace gq::cli

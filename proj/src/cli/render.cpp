#include "genquant/cli/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace gq::cli {

using sym::Expr;

std::optional<Format> format_from_name(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "latex") return Format::Latex;
  if (name == "json") return Format::Json;
  return std::nullopt;
}

Equation make_equation(std::string name, const Expr& lhs, const Expr& rhs) {
  return {std::move(name), sym::to_infix(lhs), sym::to_infix(rhs), sym::to_latex(lhs), sym::to_latex(rhs)};
}

namespace {

std::string text_factor(const Expr& e) {
  if (e.is(sym::Kind::Sum)) return "(" + sym::to_infix(e) + ")";
  return sym::to_infix(e);
}

struct OperatorStrings {
  std::string text;
  std::string latex;
};

// The bracket sum_i outer_i d/du_i (flux_i d/du_i .) applied to `target`
// (empty for the bare operator).
OperatorStrings kinetic_bracket(const quantize::HamiltonOperator& op, bool reduced, const std::string& target_text,
                                const std::string& target_latex) {
  OperatorStrings out;
  for (std::size_t i = 0; i < op.kinetic.size(); ++i) {
    const auto& k = op.kinetic[i];
    const Expr outer = reduced ? k.reduced_outer : k.outer;
    const Expr flux = reduced ? k.reduced_flux : k.flux;
    const std::string u_text = k.coordinate;
    const std::string u_latex = sym::to_latex(sym::symbol(k.coordinate));
    if (i) {
      out.text += " + ";
      out.latex += " + ";
    }
    if (!outer.is_one()) {
      out.text += text_factor(outer) + "*";
      out.latex += sym::to_latex(outer) + " ";
    }
    if (flux.is_one()) {
      out.text += "d^2/d" + u_text + "^2";
      out.latex += "\\frac{\\partial^2}{\\partial " + u_latex + "^2}";
      if (!target_text.empty()) {
        out.text += " " + target_text;
        out.latex += " " + target_latex;
      }
    } else {
      const std::string inner_text = text_factor(flux) + "*d/d" + u_text + (target_text.empty() ? "" : " " + target_text);
      const std::string inner_latex = sym::to_latex(flux) + " \\frac{\\partial}{\\partial " + u_latex + "}" +
                                      (target_latex.empty() ? "" : " " + target_latex);
      out.text += "d/d" + u_text + "(" + inner_text + ")";
      out.latex += "\\frac{\\partial}{\\partial " + u_latex + "}\\left(" + inner_latex + "\\right)";
    }
  }
  return out;
}

OperatorStrings operator_strings(const quantize::HamiltonOperator& op, bool reduced, const std::string& target_text,
                                 const std::string& target_latex) {
  const OperatorStrings bracket = kinetic_bracket(op, reduced, target_text, target_latex);
  OperatorStrings out;
  out.text = sym::to_infix(op.prefactor) + "*[" + bracket.text + "]";
  out.latex = sym::to_latex(op.prefactor) + " \\left[" + bracket.latex + "\\right]";
  if (!op.potential.is_zero()) {
    out.text += " + " + text_factor(op.potential) + (target_text.empty() ? "" : "*" + target_text);
    out.latex += " + " + sym::to_latex(op.potential) + (target_latex.empty() ? "" : " " + target_latex);
  }
  return out;
}

}  // namespace

Equation operator_equation(const quantize::HamiltonOperator& op, bool reduced) {
  const auto s = operator_strings(op, reduced, "", "");
  return {"Hamilton operator", "H", s.text, "\\hat{H}", s.latex};
}

Equation schroedinger_equation(const quantize::HamiltonOperator& op, bool reduced) {
  const auto s = operator_strings(op, reduced, "psi", "\\psi");
  return {"Schroedinger equation", s.text, "I*hbar*d/dt psi", s.latex,
          "i \\hbar \\frac{\\partial \\psi}{\\partial t}"};
}

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

double report_precision(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return std::strtod(buffer, nullptr);
}

namespace {

std::string number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

std::string latex_text(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '&' || c == '%' || c == '#' || c == '$' || c == '{' || c == '}') out += '\\';
    out += c;
  }
  return out;
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << r.command << ": " << r.system << "\n";
  for (const auto& note : r.notes) out << "  " << note << "\n";
  if (!r.equations.empty()) out << "\n";
  for (const auto& e : r.equations) {
    out << e.name << ":\n  " << e.lhs_text << " = " << e.rhs_text << "\n";
  }
  if (!r.checks.empty()) out << "\nchecks:\n";
  for (const auto& c : r.checks) {
    out << "  " << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  residual " << number(c.residual);
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
  }
  if (!r.spectra.empty()) out << "\nlevels:\n";
  for (const auto& l : r.spectra) {
    out << "  " << number(l.value) << "  x" << l.multiplicity;
    if (!l.system.empty()) out << "  [" << l.system << "]";
    out << "\n";
  }
  if (!r.deltas.empty()) {
    out << "\nrelative deltas:";
    for (double d : r.deltas) out << " " << number(d);
    out << "\n";
  }
  if (!r.checks.empty()) out << "\n" << (r.passed() ? "all checks passed" : "some checks failed") << "\n";
  return out.str();
}

std::string render_latex(const Report& r) {
  std::ostringstream out;
  out << "% " << r.command << ": " << r.system << "\n";
  if (!r.equations.empty()) {
    out << "\\begin{align*}\n";
    for (std::size_t i = 0; i < r.equations.size(); ++i) {
      const auto& e = r.equations[i];
      out << "  &\\text{" << latex_text(e.name) << "}: & " << e.lhs_latex << " &= " << e.rhs_latex;
      out << (i + 1 < r.equations.size() ? " \\\\\n" : "\n");
    }
    out << "\\end{align*}\n";
  }
  if (!r.checks.empty()) {
    out << "\\begin{tabular}{llr}\n";
    for (const auto& c : r.checks) {
      out << "  " << latex_text(c.name) << " & " << (c.passed ? "pass" : "fail") << " & $" << number(c.residual)
          << "$ \\\\\n";
    }
    out << "\\end{tabular}\n";
  }
  if (!r.spectra.empty()) {
    out << "\\begin{tabular}{lrr}\n";
    for (const auto& l : r.spectra) {
      out << "  " << latex_text(l.system) << " & $" << number(l.value) << "$ & " << l.multiplicity << " \\\\\n";
    }
    out << "\\end{tabular}\n";
  }
  if (!r.deltas.empty()) {
    out << "% relative deltas:";
    for (double d : r.deltas) out << " " << number(d);
    out << "\n";
  }
  return out.str();
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["command"] = r.command;
  j["system"] = r.system;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json entry;
    entry["name"] = c.name;
    entry["status"] = c.passed ? "pass" : "fail";
    entry["residual"] = report_precision(c.residual);
    if (!c.detail.empty()) entry["detail"] = c.detail;
    j["checks"].push_back(entry);
  }
  j["spectra"] = nlohmann::ordered_json::array();
  for (const auto& l : r.spectra) {
    nlohmann::ordered_json entry;
    entry["value"] = report_precision(l.value);
    entry["multiplicity"] = l.multiplicity;
    if (!l.system.empty()) entry["system"] = l.system;
    j["spectra"].push_back(entry);
  }
  j["deltas"] = nlohmann::ordered_json::array();
  for (double d : r.deltas) j["deltas"].push_back(report_precision(d));
  j["equations"] = nlohmann::ordered_json::array();
  for (const auto& e : r.equations) {
    j["equations"].push_back({{"name", e.name}, {"lhs", e.lhs_text}, {"rhs", e.rhs_text}, {"latex", e.lhs_latex + " = " + e.rhs_latex}});
  }
  j["notes"] = r.notes;
  j["passed"] = r.passed();
  return j.dump(2) + "\n";
}

}  // namespace

std::string render(const Report& report, Format format) {
  switch (format) {
    case Format::Text: return render_text(report);
    case Format::Latex: return render_latex(report);
    case Format::Json: return render_json(report);
  }
  return {};
}

}  // namespace gq::cli

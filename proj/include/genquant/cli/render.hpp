#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genquant/quantize/quantize.hpp"

namespace gq::cli {

enum class Format { Text, Latex, Json };

std::optional<Format> format_from_name(std::string_view name);

/// One displayed equation lhs = rhs, in plain text and LaTeX.
struct Equation {
  std::string name;
  std::string lhs_text;
  std::string rhs_text;
  std::string lhs_latex;
  std::string rhs_latex;
};

Equation make_equation(std::string name, const sym::Expr& lhs, const sym::Expr& rhs);

/// H in divergence form, with the u_i-independent flux factors pulled out
/// front when `reduced` is set.
Equation operator_equation(const quantize::HamiltonOperator& op, bool reduced = true);
/// H psi = i hbar dpsi/dt with the same layout.
Equation schroedinger_equation(const quantize::HamiltonOperator& op, bool reduced = true);

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

struct Level {
  double value = 0.0;
  int multiplicity = 0;
  std::string system;
};

/// Result of one command.
struct Report {
  std::string command;
  std::string system;
  std::vector<Equation> equations;
  std::vector<Check> checks;
  std::vector<Level> spectra;
  std::vector<double> deltas;
  std::vector<std::string> notes;

  bool passed() const;
};

/// Text lists equations, checks and levels; LaTeX is a fragment built from
/// align* and tabular; Json is the schema-1 report (see README).
std::string render(const Report& report, Format format);

/// Rounds to 10 significant digits, the precision of every reported number.
double report_precision(double value);

}  // namespace gq::cli

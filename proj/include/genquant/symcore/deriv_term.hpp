#pragma once

#include <map>
#include <string>
#include <vector>

#include "genquant/symcore/expr.hpp"

namespace gq::sym {

/// Multi-index of partial derivatives: variable -> order (all orders >= 1).
using MultiIndex = std::map<std::string, int>;

/// coefficient * (partial derivatives `orders` of the field `target`). An
/// empty multi-index is the field itself, e.g. the potential term of the
/// density equation.
struct DerivTerm {
  Expr coefficient;
  std::string target;
  MultiIndex orders;
};

/// Field atom for target with the given derivative multi-index.
Expr field_atom(const std::string& target, const std::vector<std::string>& vars, const MultiIndex& orders);

MultiIndex multi_index_of(const Expr& field);

struct LinearDecomposition {
  std::vector<DerivTerm> terms;
  Expr remainder;  // part of the expression that does not involve the field
};

/// Writes an expression that is linear in the field `target` (and its
/// derivatives) as a list of DerivTerms. Throws UnsupportedExpressionError if
/// the field appears non-linearly.
LinearDecomposition linear_decompose(const Expr& e, const std::string& target);

/// Sum of coefficient * field atom over all terms.
Expr compose(const std::vector<DerivTerm>& terms, const std::vector<std::string>& vars);

/// Merges terms with identical target and multi-index, expands and drops
/// coefficients that vanish canonically.
std::vector<DerivTerm> combine_like_terms(const std::vector<DerivTerm>& terms);

/// "d/dr d/d(delta_r)" style label of a multi-index for reports.
std::string describe(const MultiIndex& orders);

}  // namespace gq::sym

#pragma once

#include <map>
#include <string>
#include <vector>

#include "genquant/symcore/expr.hpp"

namespace gq::sym {

/// One entry of a polynomial in small displacements: monomial * coefficient,
/// where the monomial is a product of displacement symbols (or 1).
struct MonomialTerm {
  Expr monomial;
  Expr coefficient;
};

struct OrderCollection {
  /// Total degree -> entries of that degree, like monomials merged.
  std::map<int, std::vector<MonomialTerm>> orders;
  /// Entries whose degree exceeds the requested maximum.
  std::vector<MonomialTerm> discarded;

  /// Sum of monomial * coefficient over one degree (0 if absent).
  Expr sum_of_order(int order) const;
};

/// Total degree of a monomial made of symbols with positive integer powers.
/// Throws UnsupportedExpressionError for anything else.
int monomial_degree(const Expr& monomial);

/// Groups entries by total degree; zero coefficients vanish.
OrderCollection collect_orders(const std::vector<MonomialTerm>& poly, int max_order);

/// Expands `e` and splits it into monomials in `symbols`; coefficients are free
/// of those symbols.
std::vector<MonomialTerm> split_monomials(const Expr& e, const std::vector<std::string>& symbols);

}  // namespace gq::sym

#include "genquant/symcore/orders.hpp"

#include <algorithm>

#include "genquant/error.hpp"

namespace gq::sym {

int monomial_degree(const Expr& monomial) {
  int degree = 0;
  for (const auto& f : factors_of(monomial)) {
    if (f.is_one()) continue;
    if (f.is(Kind::Symbol)) {
      ++degree;
    } else if (f.is(Kind::Power) && f.base().is(Kind::Symbol) && f.exponent().is_integer() &&
               f.exponent().num() > 0) {
      degree += static_cast<int>(f.exponent().num());
    } else {
      throw UnsupportedExpressionError("not a monomial: " + to_prefix(monomial));
    }
  }
  return degree;
}

Expr OrderCollection::sum_of_order(int order) const {
  auto it = orders.find(order);
  if (it == orders.end()) return Expr(0);
  std::vector<Expr> terms;
  for (const auto& t : it->second) terms.push_back(t.monomial * t.coefficient);
  return make_sum(std::move(terms));
}

OrderCollection collect_orders(const std::vector<MonomialTerm>& poly, int max_order) {
  std::map<Expr, std::vector<Expr>, ExprLess> merged;
  for (const auto& t : poly) merged[t.monomial].push_back(t.coefficient);
  OrderCollection out;
  for (auto& [mono, coeffs] : merged) {
    Expr c = make_sum(std::move(coeffs));
    if (c.is_zero() || expand(c).is_zero()) continue;
    int degree = monomial_degree(mono);
    if (degree > max_order) {
      out.discarded.push_back({mono, c});
    } else {
      out.orders[degree].push_back({mono, c});
    }
  }
  return out;
}

std::vector<MonomialTerm> split_monomials(const Expr& e, const std::vector<std::string>& symbols) {
  auto is_marker = [&](const Expr& f) {
    const Expr& core = f.is(Kind::Power) ? f.base() : f;
    return core.is(Kind::Symbol) && std::find(symbols.begin(), symbols.end(), core.name()) != symbols.end();
  };
  std::map<Expr, std::vector<Expr>, ExprLess> grouped;
  for (const auto& term : terms_of(expand(e))) {
    std::vector<Expr> mono;
    std::vector<Expr> rest;
    for (const auto& f : factors_of(term)) {
      if (is_marker(f)) {
        if (f.is(Kind::Power) && !(f.exponent().is_integer() && f.exponent().num() > 0)) {
          throw UnsupportedExpressionError("non-polynomial dependence on " + to_prefix(f));
        }
        mono.push_back(f);
      } else {
        for (const auto& s : symbols) {
          if (contains_symbol(f, s)) throw UnsupportedExpressionError("non-polynomial dependence on " + s);
        }
        rest.push_back(f);
      }
    }
    grouped[make_product(std::move(mono))].push_back(make_product(std::move(rest)));
  }
  std::vector<MonomialTerm> out;
  for (auto& [m, cs] : grouped) {
    Expr c = make_sum(std::move(cs));
    if (!c.is_zero()) out.push_back({m, c});
  }
  return out;
}

}  // namespace gq::sym

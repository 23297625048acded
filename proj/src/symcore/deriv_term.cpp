#include "genquant/symcore/deriv_term.hpp"

#include "genquant/error.hpp"

namespace gq::sym {

Expr field_atom(const std::string& target, const std::vector<std::string>& vars, const MultiIndex& orders) {
  std::vector<int> o(vars.size(), 0);
  for (const auto& [v, n] : orders) {
    bool found = false;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i] == v) {
        o[i] = n;
        found = true;
      }
    }
    if (!found) throw UnsupportedExpressionError("field " + target + " does not depend on " + v);
  }
  return Expr::field(target, vars, std::move(o));
}

MultiIndex multi_index_of(const Expr& field) {
  MultiIndex out;
  const auto& vars = field.field_vars();
  const auto& orders = field.field_orders();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (orders[i] > 0) out[vars[i]] = orders[i];
  }
  return out;
}

LinearDecomposition linear_decompose(const Expr& e, const std::string& target) {
  std::map<MultiIndex, std::vector<Expr>> grouped;
  std::vector<Expr> remainder;
  for (const auto& term : terms_of(expand(e))) {
    std::optional<Expr> atom;
    std::vector<Expr> rest;
    for (const auto& f : factors_of(term)) {
      if (f.is(Kind::Field) && f.name() == target) {
        if (atom) throw UnsupportedExpressionError("field " + target + " appears non-linearly");
        atom = f;
        continue;
      }
      for (const auto& inner : field_atoms(f)) {
        if (inner.name() == target) throw UnsupportedExpressionError("field " + target + " appears non-linearly");
      }
      rest.push_back(f);
    }
    if (atom) {
      grouped[multi_index_of(*atom)].push_back(make_product(std::move(rest)));
    } else {
      remainder.push_back(term);
    }
  }
  LinearDecomposition out;
  for (auto& [mi, coeffs] : grouped) {
    Expr c = make_sum(std::move(coeffs));
    if (!c.is_zero()) out.terms.push_back({c, target, mi});
  }
  out.remainder = make_sum(std::move(remainder));
  return out;
}

Expr compose(const std::vector<DerivTerm>& terms, const std::vector<std::string>& vars) {
  std::vector<Expr> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(t.coefficient * field_atom(t.target, vars, t.orders));
  return make_sum(std::move(out));
}

std::vector<DerivTerm> combine_like_terms(const std::vector<DerivTerm>& terms) {
  std::map<std::pair<std::string, MultiIndex>, std::vector<Expr>> grouped;
  for (const auto& t : terms) grouped[{t.target, t.orders}].push_back(t.coefficient);
  std::vector<DerivTerm> out;
  for (auto& [key, coeffs] : grouped) {
    Expr c = expand(make_sum(std::move(coeffs)));
    if (!c.is_zero()) out.push_back({c, key.first, key.second});
  }
  return out;
}

std::string describe(const MultiIndex& orders) {
  if (orders.empty()) return "1";
  std::string out;
  for (const auto& [v, n] : orders) {
    for (int i = 0; i < n; ++i) {
      if (!out.empty()) out += " ";
      out += "d/d(" + v + ")";
    }
  }
  return out;
}

}  // namespace gq::sym

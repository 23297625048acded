#include <algorithm>

#include "genquant/error.hpp"
#include "genquant/symcore/expr.hpp"

namespace gq::sym {

Expr differentiate(const Expr& e, std::string_view var) {
  switch (e.kind()) {
    case Kind::Number:
    case Kind::Imaginary:
      return Expr(0);
    case Kind::Symbol:
      return Expr(e.name() == var ? 1 : 0);
    case Kind::Field: {
      const auto& vars = e.field_vars();
      auto it = std::find(vars.begin(), vars.end(), var);
      if (it == vars.end()) return Expr(0);
      auto orders = e.field_orders();
      ++orders[static_cast<std::size_t>(it - vars.begin())];
      return Expr::field(e.name(), vars, std::move(orders));
    }
    case Kind::Sum: {
      std::vector<Expr> terms;
      terms.reserve(e.operands().size());
      for (const auto& t : e.operands()) terms.push_back(differentiate(t, var));
      return make_sum(std::move(terms));
    }
    case Kind::Product: {
      const auto& ops = e.operands();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        Expr d = differentiate(ops[i], var);
        if (d.is_zero()) continue;
        std::vector<Expr> factors;
        factors.reserve(ops.size());
        for (std::size_t j = 0; j < ops.size(); ++j) factors.push_back(j == i ? d : ops[j]);
        terms.push_back(make_product(std::move(factors)));
      }
      return make_sum(std::move(terms));
    }
    case Kind::Power: {
      Expr db = differentiate(e.base(), var);
      if (db.is_zero()) return Expr(0);
      return make_product({Expr(e.exponent()), pow(e.base(), e.exponent() - Rational(1)), db});
    }
    case Kind::Function: {
      const Expr& a = e.argument();
      Expr da = differentiate(a, var);
      if (da.is_zero()) return Expr(0);
      switch (e.function()) {
        case Fn::Sin: return cos(a) * da;
        case Fn::Cos: return -(sin(a) * da);
        case Fn::Exp: return e * da;
        case Fn::Log: return da / a;
        // tan, cot and sqrt are rewritten at construction; these cases only
        // guard hand-built trees.
        case Fn::Tan: return da * pow(cos(a), -2);
        case Fn::Cot: return -(da * pow(sin(a), -2));
        case Fn::Sqrt: return da * pow(a, Rational(-1, 2)) * Expr(Rational(1, 2));
      }
      throw UnsupportedExpressionError("cannot differentiate function " + std::string(function_name(e.function())));
    }
  }
  throw UnsupportedExpressionError("cannot differentiate " + to_prefix(e));
}

Expr differentiate(const Expr& e, std::string_view var, int order) {
  Expr out = e;
  for (int i = 0; i < order; ++i) out = differentiate(out, var);
  return out;
}

}  // namespace gq::sym

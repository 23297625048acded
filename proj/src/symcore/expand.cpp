#include "genquant/symcore/expr.hpp"

namespace gq::sym {

namespace {

// Product of two expanded expressions, distributing over both.
Expr distribute(const Expr& a, const Expr& b) {
  if (!a.is(Kind::Sum) && !b.is(Kind::Sum)) return a * b;
  std::vector<Expr> terms;
  const auto ta = terms_of(a);
  const auto tb = terms_of(b);
  terms.reserve(ta.size() * tb.size());
  for (const auto& x : ta) {
    for (const auto& y : tb) terms.push_back(x * y);
  }
  return make_sum(std::move(terms));
}

}  // namespace

Expr expand(const Expr& e) {
  switch (e.kind()) {
    case Kind::Number:
    case Kind::Imaginary:
    case Kind::Symbol:
    case Kind::Field:
      return e;
    case Kind::Function:
      return apply(e.function(), expand(e.argument()));
    case Kind::Sum: {
      std::vector<Expr> terms;
      terms.reserve(e.operands().size());
      for (const auto& t : e.operands()) terms.push_back(expand(t));
      return make_sum(std::move(terms));
    }
    case Kind::Product: {
      Expr acc(1);
      for (const auto& f : e.operands()) acc = distribute(acc, expand(f));
      return acc;
    }
    case Kind::Power: {
      Expr b = expand(e.base());
      const Rational& n = e.exponent();
      if (b.is(Kind::Sum) && n.is_integer() && n.num() > 1) {
        Expr acc = b;
        for (std::int64_t i = 1; i < n.num(); ++i) acc = distribute(acc, b);
        return acc;
      }
      Expr p = pow(b, n);
      if (p.is(Kind::Product) || p.is(Kind::Sum)) return expand(p);
      return p;
    }
  }
  return e;
}

}  // namespace gq::sym

#include "genquant/symcore/expr.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "genquant/error.hpp"

namespace gq::sym {

namespace {

constexpr std::size_t kHashSeed = 0x9e3779b97f4a7c15ULL;

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + kHashSeed + (h << 6) + (h >> 2);
  return h;
}

std::size_t hash_rational(const Rational& r) {
  return mix(std::hash<std::int64_t>{}(r.num()), std::hash<std::int64_t>{}(r.den()));
}

}  // namespace

std::string_view function_name(Fn fn) {
  switch (fn) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Tan: return "tan";
    case Fn::Cot: return "cot";
    case Fn::Exp: return "exp";
    case Fn::Log: return "log";
    case Fn::Sqrt: return "sqrt";
  }
  return "?";
}

std::optional<Fn> function_from_name(std::string_view name) {
  for (Fn fn : {Fn::Sin, Fn::Cos, Fn::Tan, Fn::Cot, Fn::Exp, Fn::Log, Fn::Sqrt}) {
    if (function_name(fn) == name) return fn;
  }
  return std::nullopt;
}

// Raw node construction. Callers are responsible for canonical form.
class NodeFactory {
 public:
  static Expr number(const Rational& v) {
    auto n = std::make_shared<detail::Node>();
    n->kind = Kind::Number;
    n->value = v;
    n->hash = mix(1, hash_rational(v));
    return Expr(std::move(n));
  }
  static Expr symbol(std::string name) {
    auto n = std::make_shared<detail::Node>();
    n->kind = Kind::Symbol;
    n->hash = mix(2, std::hash<std::string>{}(name));
    n->name = std::move(name);
    return Expr(std::move(n));
  }
  static Expr imaginary() {
    auto n = std::make_shared<detail::Node>();
    n->kind = Kind::Imaginary;
    n->hash = 3;
    return Expr(std::move(n));
  }
  static Expr field(std::string name, std::vector<std::string> vars, std::vector<int> orders) {
    auto n = std::make_shared<detail::Node>();
    n->kind = Kind::Field;
    std::size_t h = mix(4, std::hash<std::string>{}(name));
    for (const auto& v : vars) h = mix(h, std::hash<std::string>{}(v));
    for (int o : orders) h = mix(h, static_cast<std::size_t>(o));
    n->hash = h;
    n->name = std::move(name);
    n->vars = std::move(vars);
    n->orders = std::move(orders);
    return Expr(std::move(n));
  }
  static Expr function(Fn fn, const Expr& arg) {
    auto n = std::make_shared<detail::Node>();
    n->kind = Kind::Function;
    n->fn = fn;
    n->ops = {arg};
    n->hash = mix(mix(5, static_cast<std::size_t>(fn)), arg.hash());
    return Expr(std::move(n));
  }
  static Expr power(const Expr& base, const Rational& e) {
    auto n = std::make_shared<detail::Node>();
    n->kind = Kind::Power;
    n->ops = {base};
    n->value = e;
    n->hash = mix(mix(6, base.hash()), hash_rational(e));
    return Expr(std::move(n));
  }
  static Expr nary(Kind kind, std::vector<Expr> ops) {
    auto n = std::make_shared<detail::Node>();
    n->kind = kind;
    std::size_t h = kind == Kind::Sum ? 8 : 7;
    for (const auto& o : ops) h = mix(h, o.hash());
    n->hash = h;
    n->ops = std::move(ops);
    return Expr(std::move(n));
  }
};

// ---------------------------------------------------------------------------
// Expr basics

Expr::Expr() : Expr(NodeFactory::number(Rational(0))) {}
Expr::Expr(std::int64_t value) : Expr(NodeFactory::number(Rational(value))) {}
Expr::Expr(const Rational& value) : Expr(NodeFactory::number(value)) {}

Expr Expr::symbol(std::string name) {
  if (name.empty()) throw UnsupportedExpressionError("empty symbol name");
  return NodeFactory::symbol(std::move(name));
}

Expr Expr::imaginary_unit() {
  static const Expr unit = NodeFactory::imaginary();
  return unit;
}

Expr Expr::field(std::string name, std::vector<std::string> vars, std::vector<int> orders) {
  if (orders.empty()) orders.assign(vars.size(), 0);
  if (orders.size() != vars.size()) {
    throw UnsupportedExpressionError("field '" + name + "': derivative orders do not match its variables");
  }
  for (int o : orders) {
    if (o < 0) throw UnsupportedExpressionError("field '" + name + "': negative derivative order");
  }
  return NodeFactory::field(std::move(name), std::move(vars), std::move(orders));
}

const Rational& Expr::number() const {
  if (!is(Kind::Number)) throw UnsupportedExpressionError("not a number: " + to_prefix(*this));
  return node_->value;
}

const std::string& Expr::name() const {
  if (!is(Kind::Symbol) && !is(Kind::Field)) throw UnsupportedExpressionError("not a symbol: " + to_prefix(*this));
  return node_->name;
}

Fn Expr::function() const {
  if (!is(Kind::Function)) throw UnsupportedExpressionError("not a function: " + to_prefix(*this));
  return node_->fn;
}

const Expr& Expr::argument() const {
  if (!is(Kind::Function)) throw UnsupportedExpressionError("not a function: " + to_prefix(*this));
  return node_->ops.front();
}

const Expr& Expr::base() const {
  if (!is(Kind::Power)) throw UnsupportedExpressionError("not a power: " + to_prefix(*this));
  return node_->ops.front();
}

const Rational& Expr::exponent() const {
  if (!is(Kind::Power)) throw UnsupportedExpressionError("not a power: " + to_prefix(*this));
  return node_->value;
}

const std::vector<Expr>& Expr::operands() const { return node_->ops; }
const std::vector<std::string>& Expr::field_vars() const { return node_->vars; }
const std::vector<int>& Expr::field_orders() const { return node_->orders; }

int Expr::field_order(std::string_view var) const {
  for (std::size_t i = 0; i < node_->vars.size(); ++i) {
    if (node_->vars[i] == var) return node_->orders[i];
  }
  return 0;
}

bool Expr::field_is_underived() const {
  return std::all_of(node_->orders.begin(), node_->orders.end(), [](int o) { return o == 0; });
}

int compare(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  auto three = [](auto x, auto y) { return x < y ? -1 : (y < x ? 1 : 0); };
  switch (a.kind()) {
    case Kind::Number: {
      auto c = a.number() <=> b.number();
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::Imaginary:
      return 0;
    case Kind::Symbol:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Kind::Field: {
      if (int c = a.name().compare(b.name())) return c < 0 ? -1 : 1;
      if (int c = three(a.field_vars(), b.field_vars())) return c;
      // Higher total order sorts later.
      return three(a.field_orders(), b.field_orders());
    }
    case Kind::Function:
      if (a.function() != b.function()) return a.function() < b.function() ? -1 : 1;
      return compare(a.argument(), b.argument());
    case Kind::Power: {
      if (int c = compare(a.base(), b.base())) return c;
      auto c = a.exponent() <=> b.exponent();
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::Product:
    case Kind::Sum: {
      const auto& x = a.operands();
      const auto& y = b.operands();
      std::size_t n = std::min(x.size(), y.size());
      // Compare from the last operand: the leading operand of a product is
      // usually a coefficient, which should matter least for term order.
      for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(x[x.size() - 1 - i], y[y.size() - 1 - i])) return c;
      }
      return three(x.size(), y.size());
    }
  }
  return 0;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  int c = compare(a, b);
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Expr symbol(std::string name) { return Expr::symbol(std::move(name)); }

// ---------------------------------------------------------------------------
// Helpers on canonical forms

std::pair<Rational, Expr> split_coefficient(const Expr& e) {
  if (e.is_number()) return {e.number(), Expr(1)};
  if (e.is(Kind::Product)) {
    const auto& ops = e.operands();
    if (ops.front().is_number()) {
      if (ops.size() == 2) return {ops.front().number(), ops[1]};
      return {ops.front().number(), NodeFactory::nary(Kind::Product, {ops.begin() + 1, ops.end()})};
    }
  }
  return {Rational(1), e};
}

std::vector<Expr> factors_of(const Expr& e) {
  if (e.is(Kind::Product)) return e.operands();
  return {e};
}

std::vector<Expr> terms_of(const Expr& e) {
  if (e.is(Kind::Sum)) return e.operands();
  if (e.is_zero()) return {};
  return {e};
}

namespace {

// c * T for a canonical term T (no rational coefficient) without re-running
// the full product simplifier.
Expr scaled(const Rational& c, const Expr& term) {
  if (c.is_zero()) return Expr(0);
  if (term.is_one()) return Expr(c);
  if (c.is_one()) return term;
  std::vector<Expr> ops;
  ops.reserve(term.is(Kind::Product) ? term.operands().size() + 1 : 2);
  ops.push_back(Expr(c));
  if (term.is(Kind::Product)) {
    ops.insert(ops.end(), term.operands().begin(), term.operands().end());
  } else {
    ops.push_back(term);
  }
  return NodeFactory::nary(Kind::Product, std::move(ops));
}

bool leading_sign_negative(const Expr& e) {
  if (e.is_number()) return e.number().is_negative();
  if (e.is(Kind::Product)) return split_coefficient(e).first.is_negative();
  if (e.is(Kind::Sum)) return leading_sign_negative(e.operands().front());
  return false;
}

using TermMap = std::map<Expr, Rational, ExprLess>;

// sin(a)^2 + cos(a)^2 -> 1, applied to pairs of terms M*sin(a)^2 and
// M*cos(a)^2 with equal coefficients (M may carry further powers of sin(a)
// and cos(a), and the constant term is keyed by 1). Returns true if the map
// was modified.
bool pythagorean_pass(TermMap& terms) {
  for (auto it = terms.begin(); it != terms.end(); ++it) {
    const Expr term = it->first;
    const Rational coeff = it->second;
    for (const Expr& f : factors_of(term)) {
      const Expr& core = f.is(Kind::Power) ? f.base() : f;
      if (!core.is(Kind::Function)) continue;
      const Fn fn = core.function();
      if (fn != Fn::Sin && fn != Fn::Cos) continue;
      const Expr& a = core.argument();
      const Expr here = apply(fn, a);
      const Expr other = apply(fn == Fn::Sin ? Fn::Cos : Fn::Sin, a);
      Expr partner = make_product({term, pow(other, 2), pow(here, -2)});
      auto [pc, pterm] = split_coefficient(partner);
      auto pit = terms.find(pterm);
      if (pit == terms.end() || pit == it || !(pit->second == coeff * pc)) continue;
      auto [rc, rterm] = split_coefficient(make_product({term, pow(here, -2)}));
      terms.erase(pit);
      terms.erase(term);
      terms[rterm] += coeff * rc;
      return true;
    }
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Simplifying constructors

Expr make_sum(std::vector<Expr> operands) {
  Rational constant(0);
  TermMap terms;
  std::vector<Expr> stack = std::move(operands);
  bool has_sin = false;
  bool has_cos = false;
  while (!stack.empty()) {
    Expr e = std::move(stack.back());
    stack.pop_back();
    if (e.is_number()) {
      constant += e.number();
      continue;
    }
    if (e.is(Kind::Sum)) {
      stack.insert(stack.end(), e.operands().begin(), e.operands().end());
      continue;
    }
    auto [c, t] = split_coefficient(e);
    terms[t] += c;
  }
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second.is_zero()) {
      it = terms.erase(it);
      continue;
    }
    for (const Expr& f : factors_of(it->first)) {
      const Expr& core = f.is(Kind::Power) ? f.base() : f;
      if (core.is(Kind::Function)) {
        has_sin |= core.function() == Fn::Sin;
        has_cos |= core.function() == Fn::Cos;
      }
    }
    ++it;
  }
  if (has_sin || has_cos) {
    if (!constant.is_zero()) terms[Expr(1)] += constant;
    constant = Rational(0);
    while (pythagorean_pass(terms)) {
      for (auto it = terms.begin(); it != terms.end();) {
        if (it->second.is_zero()) {
          it = terms.erase(it);
        } else {
          ++it;
        }
      }
    }
    for (auto it = terms.begin(); it != terms.end();) {
      if (it->first.is_number()) {
        constant += it->second * it->first.number();
        it = terms.erase(it);
      } else {
        ++it;
      }
    }
  }
  std::vector<Expr> out;
  out.reserve(terms.size() + 1);
  if (!constant.is_zero()) out.push_back(Expr(constant));
  bool nested = false;
  for (const auto& [t, c] : terms) {
    if (t.is(Kind::Sum)) {
      nested = true;
      out.push_back(make_product({Expr(c), t}));
    } else {
      out.push_back(scaled(c, t));
    }
  }
  if (nested) return make_sum(std::move(out));
  if (out.empty()) return Expr(0);
  if (out.size() == 1) return out.front();
  std::sort(out.begin(), out.end(), ExprLess{});
  return NodeFactory::nary(Kind::Sum, std::move(out));
}

Expr make_product(std::vector<Expr> operands) {
  Rational coeff(1);
  int imaginary = 0;
  std::map<Expr, Rational, ExprLess> powers;
  std::vector<Expr> exp_args;
  std::vector<Expr> stack = std::move(operands);
  while (!stack.empty()) {
    Expr e = std::move(stack.back());
    stack.pop_back();
    switch (e.kind()) {
      case Kind::Number:
        coeff *= e.number();
        if (coeff.is_zero()) return Expr(0);
        break;
      case Kind::Product:
        stack.insert(stack.end(), e.operands().begin(), e.operands().end());
        break;
      case Kind::Imaginary:
        ++imaginary;
        break;
      case Kind::Function:
        if (e.function() == Fn::Exp) {
          exp_args.push_back(e.argument());
        } else {
          powers[e] += Rational(1);
        }
        break;
      case Kind::Power:
        powers[e.base()] += e.exponent();
        break;
      default:
        powers[e] += Rational(1);
        break;
    }
  }
  std::vector<Expr> factors;
  bool needs_second_pass = false;
  auto absorb = [&](const Expr& f) {
    switch (f.kind()) {
      case Kind::Number:
        coeff *= f.number();
        break;
      case Kind::Product:
      case Kind::Imaginary:
        needs_second_pass = true;
        factors.push_back(f);
        break;
      case Kind::Function:
        if (f.function() == Fn::Exp) needs_second_pass = true;
        factors.push_back(f);
        break;
      default:
        factors.push_back(f);
    }
  };
  if (!exp_args.empty()) {
    Expr combined = exp_args.size() == 1 ? exp(exp_args.front()) : exp(make_sum(std::move(exp_args)));
    if (combined.is(Kind::Function) && combined.function() == Fn::Exp) {
      factors.push_back(combined);
    } else {
      absorb(combined);
    }
  }
  for (const auto& [b, e] : powers) {
    if (e.is_zero()) continue;
    if (e.is_one()) {
      absorb(b);
    } else {
      absorb(pow(b, e));
    }
  }
  if (coeff.is_zero()) return Expr(0);
  switch (imaginary % 4) {
    case 1: factors.push_back(Expr::imaginary_unit()); break;
    case 2: coeff = -coeff; break;
    case 3: coeff = -coeff; factors.push_back(Expr::imaginary_unit()); break;
    default: break;
  }
  if (needs_second_pass) {
    factors.push_back(Expr(coeff));
    return make_product(std::move(factors));
  }
  if (factors.empty()) return Expr(coeff);
  if (factors.size() == 1) {
    if (coeff.is_one()) return factors.front();
    if (factors.front().is(Kind::Sum)) {
      std::vector<Expr> distributed;
      distributed.reserve(factors.front().operands().size());
      for (const auto& t : factors.front().operands()) distributed.push_back(make_product({Expr(coeff), t}));
      return make_sum(std::move(distributed));
    }
  }
  std::sort(factors.begin(), factors.end(), ExprLess{});
  if (!coeff.is_one()) factors.insert(factors.begin(), Expr(coeff));
  return NodeFactory::nary(Kind::Product, std::move(factors));
}

Expr pow(const Expr& base, const Rational& e) {
  if (e.is_zero()) return Expr(1);
  if (e.is_one()) return base;
  switch (base.kind()) {
    case Kind::Number: {
      if (auto exact = Rational::exact_pow(base.number(), e)) return Expr(*exact);
      if (base.number().is_negative()) return NodeFactory::power(base, e);
      // Keep the fractional part symbolic: 2^(3/2) -> 2 * 2^(1/2).
      std::int64_t whole = e.num() / e.den();
      if (e.num() < 0 && e.num() % e.den() != 0) --whole;
      Rational frac = e - Rational(whole);
      Expr pref(*Rational::exact_pow(base.number(), Rational(whole)));
      auto root = Rational::exact_pow(base.number(), frac);
      Expr rest = root ? Expr(*root) : NodeFactory::power(base, frac);
      return make_product({pref, rest});
    }
    case Kind::Imaginary: {
      if (!e.is_integer()) return NodeFactory::power(base, e);
      std::int64_t k = ((e.num() % 4) + 4) % 4;
      static const Expr values[4] = {Expr(1), Expr::imaginary_unit(), Expr(-1),
                                     make_product({Expr(-1), Expr::imaginary_unit()})};
      return values[k];
    }
    case Kind::Power:
      if (e.is_integer()) return pow(base.base(), base.exponent() * e);
      return NodeFactory::power(base, e);
    case Kind::Product: {
      if (e.is_integer()) {
        std::vector<Expr> ops;
        ops.reserve(base.operands().size());
        for (const auto& f : base.operands()) ops.push_back(pow(f, e));
        return make_product(std::move(ops));
      }
      auto [c, rest] = split_coefficient(base);
      if (!c.is_one() && !c.is_negative()) return make_product({pow(Expr(c), e), pow(rest, e)});
      return NodeFactory::power(base, e);
    }
    case Kind::Function:
      if (base.function() == Fn::Exp && e.is_integer()) return exp(make_product({Expr(e), base.argument()}));
      return NodeFactory::power(base, e);
    default:
      return NodeFactory::power(base, e);
  }
}

Expr apply(Fn fn, const Expr& x) {
  switch (fn) {
    case Fn::Sin:
      if (x.is_zero()) return Expr(0);
      if (leading_sign_negative(x)) return -NodeFactory::function(Fn::Sin, -x);
      return NodeFactory::function(Fn::Sin, x);
    case Fn::Cos:
      if (x.is_zero()) return Expr(1);
      if (leading_sign_negative(x)) return NodeFactory::function(Fn::Cos, -x);
      return NodeFactory::function(Fn::Cos, x);
    case Fn::Tan:
      return make_product({sin(x), pow(cos(x), -1)});
    case Fn::Cot:
      return make_product({cos(x), pow(sin(x), -1)});
    case Fn::Exp:
      if (x.is_zero()) return Expr(1);
      if (x.is(Kind::Function) && x.function() == Fn::Log) return x.argument();
      return NodeFactory::function(Fn::Exp, x);
    case Fn::Log:
      if (x.is_one()) return Expr(0);
      if (x.is(Kind::Function) && x.function() == Fn::Exp) return x.argument();
      if (x.is_number() && !x.number().is_negative() && x.number().is_zero()) {
        throw EvaluationError("log(0)");
      }
      return NodeFactory::function(Fn::Log, x);
    case Fn::Sqrt:
      return pow(x, Rational(1, 2));
  }
  throw UnsupportedExpressionError("unknown function kind");
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return make_sum({a, b});
}
Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  return make_sum({a, -b});
}
Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return make_product({a, b});
}
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw EvaluationError("symbolic division by zero");
  return make_product({a, pow(b, -1)});
}
Expr operator-(const Expr& a) {
  if (a.is_number()) return Expr(-a.number());
  return make_product({Expr(-1), a});
}

// ---------------------------------------------------------------------------
// Queries and rebuilds

namespace {

template <typename Visit>
void walk(const Expr& e, Visit&& visit) {
  visit(e);
  switch (e.kind()) {
    case Kind::Function:
    case Kind::Power:
    case Kind::Sum:
    case Kind::Product:
      for (const auto& op : e.operands()) walk(op, visit);
      break;
    default:
      break;
  }
}

}  // namespace

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  walk(e, [&](const Expr& x) {
    if (x.is(Kind::Symbol)) out.insert(x.name());
  });
  return out;
}

std::vector<Expr> field_atoms(const Expr& e) {
  std::set<Expr, ExprLess> seen;
  walk(e, [&](const Expr& x) {
    if (x.is(Kind::Field)) seen.insert(x);
  });
  return {seen.begin(), seen.end()};
}

bool contains_symbol(const Expr& e, std::string_view name) {
  bool found = false;
  walk(e, [&](const Expr& x) { found = found || (x.is(Kind::Symbol) && x.name() == name); });
  return found;
}

bool contains_imaginary(const Expr& e) {
  bool found = false;
  walk(e, [&](const Expr& x) { found = found || x.is(Kind::Imaginary); });
  return found;
}

bool depends_on(const Expr& e, std::string_view var) {
  bool found = false;
  walk(e, [&](const Expr& x) {
    if (found) return;
    if (x.is(Kind::Symbol) && x.name() == var) found = true;
    if (x.is(Kind::Field)) {
      for (const auto& v : x.field_vars()) found = found || v == var;
    }
  });
  return found;
}

namespace {

Expr rebuild(const Expr& e, const std::function<Expr(const Expr&)>& leaf) {
  switch (e.kind()) {
    case Kind::Number:
    case Kind::Imaginary:
    case Kind::Symbol:
    case Kind::Field:
      return leaf(e);
    case Kind::Function:
      return apply(e.function(), rebuild(e.argument(), leaf));
    case Kind::Power:
      return pow(rebuild(e.base(), leaf), e.exponent());
    case Kind::Sum: {
      std::vector<Expr> ops;
      ops.reserve(e.operands().size());
      for (const auto& op : e.operands()) ops.push_back(rebuild(op, leaf));
      return make_sum(std::move(ops));
    }
    case Kind::Product: {
      std::vector<Expr> ops;
      ops.reserve(e.operands().size());
      for (const auto& op : e.operands()) ops.push_back(rebuild(op, leaf));
      return make_product(std::move(ops));
    }
  }
  return e;
}

}  // namespace

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (bindings.empty()) return e;
  return rebuild(e, [&](const Expr& leaf) {
    if (leaf.is(Kind::Symbol)) {
      auto it = bindings.find(leaf.name());
      if (it != bindings.end()) return it->second;
    }
    return leaf;
  });
}

Expr simplify(const Expr& e) {
  return rebuild(e, [](const Expr& leaf) { return leaf; });
}

Expr substitute_field(const Expr& e, const std::string& name, const Expr& replacement) {
  return rebuild(e, [&](const Expr& leaf) {
    if (!leaf.is(Kind::Field) || leaf.name() != name) return leaf;
    Expr out = replacement;
    const auto& vars = leaf.field_vars();
    for (std::size_t i = 0; i < vars.size(); ++i) out = differentiate(out, vars[i], leaf.field_orders()[i]);
    return out;
  });
}

}  // namespace gq::sym

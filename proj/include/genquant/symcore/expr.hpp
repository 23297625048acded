#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "genquant/symcore/rational.hpp"

namespace gq::sym {

/// Node kinds, listed in canonical rank order: when two expressions of
/// different kinds are compared, the lower rank sorts first.
enum class Kind : std::uint8_t { Number, Imaginary, Symbol, Field, Function, Power, Product, Sum };

enum class Fn : std::uint8_t { Sin, Cos, Tan, Cot, Exp, Log, Sqrt };

std::string_view function_name(Fn fn);
std::optional<Fn> function_from_name(std::string_view name);

class Expr;

namespace detail {

struct Node {
  Kind kind = Kind::Number;
  Fn fn = Fn::Sin;
  Rational value;                 // Number payload, Power exponent
  std::string name;               // Symbol, Field
  std::vector<Expr> ops;          // Sum/Product operands, Function argument, Power base
  std::vector<std::string> vars;  // Field dependencies
  std::vector<int> orders;        // Field derivative orders, parallel to vars
  std::size_t hash = 0;
};

}  // namespace detail

/// Immutable, canonically simplified expression tree.
///
/// Every constructor and arithmetic operator returns the automatic-simplified
/// form: nested sums and products are flattened, like terms and like bases are
/// combined, rational constants are folded, operands of sums and products are
/// sorted under `compare`, and quotients are represented as negative powers.
/// Values share structure and are safe to pass between threads.
///
/// A Field is an undetermined function such as R(r, theta, t) together with a
/// partial-derivative multi-index; differentiation only bumps the index.
class Expr {
 public:
  Expr();
  Expr(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Expr(int value) : Expr(static_cast<std::int64_t>(value)) {}  // NOLINT
  Expr(const Rational& value);  // NOLINT

  static Expr symbol(std::string name);
  static Expr imaginary_unit();
  static Expr field(std::string name, std::vector<std::string> vars, std::vector<int> orders = {});

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool is_number() const { return is(Kind::Number); }
  bool is_zero() const { return is_number() && node_->value.is_zero(); }
  bool is_one() const { return is_number() && node_->value.is_one(); }

  const Rational& number() const;
  const std::string& name() const;
  Fn function() const;
  const Expr& argument() const;
  const Expr& base() const;
  const Rational& exponent() const;
  const std::vector<Expr>& operands() const;
  const std::vector<std::string>& field_vars() const;
  const std::vector<int>& field_orders() const;
  int field_order(std::string_view var) const;
  bool field_is_underived() const;

  std::size_t hash() const { return node_->hash; }
  bool same_node(const Expr& o) const { return node_ == o.node_; }

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  friend class NodeFactory;

  std::shared_ptr<const detail::Node> node_;
};

/// Total canonical order; negative, zero or positive like strcmp.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

using Bindings = std::map<std::string, Expr>;

Expr symbol(std::string name);
inline Expr imaginary_unit() { return Expr::imaginary_unit(); }

Expr make_sum(std::vector<Expr> operands);
Expr make_product(std::vector<Expr> operands);
Expr pow(const Expr& base, const Rational& exponent);
Expr apply(Fn fn, const Expr& argument);

inline Expr sin(const Expr& x) { return apply(Fn::Sin, x); }
inline Expr cos(const Expr& x) { return apply(Fn::Cos, x); }
inline Expr tan(const Expr& x) { return apply(Fn::Tan, x); }
inline Expr cot(const Expr& x) { return apply(Fn::Cot, x); }
inline Expr exp(const Expr& x) { return apply(Fn::Exp, x); }
inline Expr log(const Expr& x) { return apply(Fn::Log, x); }
inline Expr sqrt(const Expr& x) { return apply(Fn::Sqrt, x); }

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
inline Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
inline Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
inline Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

/// Splits c * T into the rational coefficient c and the remaining term T.
std::pair<Rational, Expr> split_coefficient(const Expr& e);

/// Operand list of a product, or the expression itself as a one-element list.
std::vector<Expr> factors_of(const Expr& e);
/// Operand list of a sum, or the expression itself as a one-element list.
std::vector<Expr> terms_of(const Expr& e);

std::set<std::string> free_symbols(const Expr& e);
/// Distinct Field atoms (any derivative order) appearing in e.
std::vector<Expr> field_atoms(const Expr& e);
bool contains_symbol(const Expr& e, std::string_view name);
bool contains_imaginary(const Expr& e);
/// True if e varies with `var`: as a symbol or through a field that depends on it.
bool depends_on(const Expr& e, std::string_view var);

/// Simultaneous substitution of symbols; replacements are not re-substituted.
Expr substitute(const Expr& e, const Bindings& bindings);

/// Replaces every atom of the field `name` by `replacement` (an expression in
/// the field's variables), differentiated according to the atom's multi-index.
Expr substitute_field(const Expr& e, const std::string& name, const Expr& replacement);

/// Rebuilds e bottom-up through the simplifying constructors. Idempotent.
Expr simplify(const Expr& e);

/// Distributes products over sums and positive integer powers of sums,
/// recursively (including inside function arguments).
Expr expand(const Expr& e);

/// Exact partial derivative with respect to the symbol `var`.
Expr differentiate(const Expr& e, std::string_view var);
Expr differentiate(const Expr& e, std::string_view var, int order);

/// Canonical prefix serialization, e.g. "(+ 1 (* 2 r (^ (sin theta) -1)))".
std::string to_prefix(const Expr& e);
/// Infix text that the document parser reads back to the same expression.
std::string to_infix(const Expr& e);
std::string to_latex(const Expr& e);

}  // namespace gq::sym

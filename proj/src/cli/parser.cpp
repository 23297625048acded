#include <algorithm>
#include <cmath>
#include <map>

#include "genquant/classical/classical.hpp"
#include "genquant/cli/document.hpp"
#include "genquant/symcore/evaluate.hpp"
#include "lexer.hpp"

namespace gq::cli {

using sym::Expr;

namespace {

const std::set<std::string> kKeywords = {"coordsys", "coords", "map", "factors", "range", "periodic", "potential"};

struct Name {
  std::string text;
  SourcePosition pos;
};

/// An expression together with every identifier it used, for later checks.
struct Parsed {
  Expr expr;
  std::vector<Name> symbols;
  std::vector<Name> field_arguments;
  SourcePosition pos;
};

struct Bound {
  std::optional<Parsed> value;  // nullopt: infinite
  bool negative_infinity = false;
  SourcePosition pos;
};

struct RangeStatement {
  Name coordinate;
  Bound lo;
  Bound hi;
};

sym::Rational decimal(const Token& token) {
  const std::string& text = token.text;
  const auto e = text.find_first_of("eE");
  const std::string mantissa = text.substr(0, e);
  int exponent = e == std::string::npos ? 0 : std::stoi(text.substr(e + 1));
  std::string digits;
  for (char c : mantissa) {
    if (c == '.') continue;
    digits += c;
  }
  const auto dot = mantissa.find('.');
  if (dot != std::string::npos) exponent -= static_cast<int>(mantissa.size() - dot - 1);
  try {
    sym::Rational value(0);
    for (char c : digits) value = value * sym::Rational(10) + sym::Rational(c - '0');
    for (; exponent > 0; --exponent) value = value * sym::Rational(10);
    for (; exponent < 0; ++exponent) value = value / sym::Rational(10);
    return value;
  } catch (const OverflowError&) {
    throw SyntaxError("number " + text + " does not fit an exact 64-bit rational", token.pos);
  }
}

class Parser {
 public:
  explicit Parser(std::string_view source) : tokens_(tokenize(source)) {}

  bool at_end() const { return peek().kind == TokenKind::End; }
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(index_ + ahead, tokens_.size() - 1)]; }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::Punct && peek(ahead).text == p;
  }

  bool accept(std::string_view p) {
    if (!is_punct(p)) return false;
    ++index_;
    return true;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError("expected " + expected + ", found " + describe(peek()), peek().pos);
  }

  Token expect(std::string_view p) {
    if (!is_punct(p)) fail("'" + std::string(p) + "'");
    return tokens_[index_++];
  }

  Name identifier(const std::string& what) {
    if (peek().kind != TokenKind::Identifier) fail(what);
    const Token& t = tokens_[index_++];
    return {t.text, t.pos};
  }

  std::vector<Name> identifier_list(const std::string& what) {
    std::vector<Name> out{identifier(what)};
    while (accept(",")) out.push_back(identifier(what));
    return out;
  }

  Parsed expression() {
    Parsed p;
    p.pos = peek().pos;
    p.expr = sum(p);
    return p;
  }

  Parsed whole_expression() {
    Parsed p = expression();
    if (!at_end()) fail("operator or end of expression");
    return p;
  }

  Bound bound() {
    Bound b;
    b.pos = peek().pos;
    if (peek().kind == TokenKind::Identifier && peek().text == "inf") {
      ++index_;
      return b;
    }
    if (is_punct("-") && peek(1).kind == TokenKind::Identifier && peek(1).text == "inf") {
      index_ += 2;
      b.negative_infinity = true;
      return b;
    }
    b.value = expression();
    return b;
  }

 private:
  Expr sum(Parsed& p) {
    Expr out = product(p);
    while (true) {
      if (accept("+")) {
        out = out + product(p);
      } else if (accept("-")) {
        out = out - product(p);
      } else {
        return out;
      }
    }
  }

  Expr product(Parsed& p) {
    Expr out = unary(p);
    while (true) {
      if (accept("*")) {
        out = out * unary(p);
      } else if (accept("/")) {
        out = out / unary(p);
      } else {
        return out;
      }
    }
  }

  Expr unary(Parsed& p) {
    if (accept("-")) return -unary(p);
    if (accept("+")) return unary(p);
    return power(p);
  }

  Expr power(Parsed& p) {
    Expr base = primary(p);
    if (!accept("^")) return base;
    const SourcePosition at = peek().pos;
    const Expr exponent = unary(p);
    if (!exponent.is_number()) throw SemanticError("exponent must be a rational constant", at);
    return sym::pow(base, exponent.number());
  }

  Expr parenthesized(Parsed& p, const Token& open) {
    if (at_end() || is_punct(";")) {
      throw SyntaxError("unclosed '(': expected expression, found " + describe(peek()), open.pos);
    }
    Expr inner = sum(p);
    if (!is_punct(")")) {
      throw SyntaxError("unclosed '(': expected ')', found " + describe(peek()) + " at " +
                            std::to_string(peek().pos.line) + ":" + std::to_string(peek().pos.column),
                        open.pos);
    }
    ++index_;
    return inner;
  }

  Expr primary(Parsed& p) {
    const Token& t = peek();
    if (t.kind == TokenKind::Number) {
      ++index_;
      return Expr(decimal(t));
    }
    if (is_punct("(")) {
      const Token open = tokens_[index_++];
      return parenthesized(p, open);
    }
    if (t.kind != TokenKind::Identifier) fail("expression");
    const Name name{t.text, t.pos};
    ++index_;
    if (!is_punct("(")) {
      if (name.text == "inf") throw SemanticError("inf is only allowed as a range bound", name.pos);
      p.symbols.push_back(name);
      return sym::symbol(name.text);
    }
    const Token open = tokens_[index_++];
    if (const auto fn = sym::function_from_name(name.text)) return sym::apply(*fn, parenthesized(p, open));
    std::vector<std::string> vars;
    if (at_end() || is_punct(";")) {
      throw SyntaxError("unclosed '(': expected argument list, found " + describe(peek()), open.pos);
    }
    for (const Name& arg : identifier_list("function argument name")) {
      if (std::find(vars.begin(), vars.end(), arg.text) != vars.end()) {
        throw SemanticError("repeated argument " + arg.text, arg.pos);
      }
      vars.push_back(arg.text);
      p.field_arguments.push_back(arg);
    }
    if (!is_punct(")")) {
      throw SyntaxError("unclosed '(': expected ')', found " + describe(peek()), open.pos);
    }
    ++index_;
    return Expr::field(name.text, vars);
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

void check_symbols(const Parsed& p, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& s : p.symbols) {
    if (s.text != "pi" && !allowed.count(s.text)) {
      throw SemanticError("unknown symbol '" + s.text + "' in " + where, s.pos);
    }
  }
}

void check_field_arguments(const Parsed& p, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& s : p.field_arguments) {
    if (!allowed.count(s.text)) throw SemanticError("'" + s.text + "' is not a coordinate (in " + where + ")", s.pos);
  }
}

bool reserved(const std::string& name) {
  return name == "pi" || name == "inf" || name == classical::kHbar || name == classical::kMass ||
         name == classical::kTime || sym::function_from_name(name).has_value() || kKeywords.count(name);
}

std::optional<Expr> bound_value(const Bound& b, bool upper) {
  if (!b.value) {
    if (upper == b.negative_infinity) {
      throw SemanticError(upper ? "upper bound cannot be -inf" : "lower bound cannot be inf", b.pos);
    }
    return std::nullopt;
  }
  if (!b.value->field_arguments.empty()) throw SemanticError("range bound must be a constant", b.pos);
  for (const auto& s : b.value->symbols) {
    if (s.text != "pi") throw SemanticError("range bound must be a constant, found '" + s.text + "'", s.pos);
  }
  return b.value->expr;
}

double numeric_bound(const std::optional<Expr>& e, double infinite) {
  return e ? sym::evaluate_real(*e, {}) : infinite;
}

}  // namespace

CoordSysDocument parse_document(std::string_view source) {
  Parser parser(source);
  std::map<std::string, SourcePosition> seen_statements;
  std::optional<Name> system_name;
  std::vector<Name> coordinates;
  std::vector<std::pair<Name, Parsed>> map;
  std::vector<std::pair<std::optional<Name>, Parsed>> factors;
  std::vector<RangeStatement> ranges;
  std::vector<Name> periodic;
  std::optional<Parsed> potential;

  while (!parser.at_end()) {
    const Name keyword = parser.identifier("statement keyword");
    if (!kKeywords.count(keyword.text)) {
      throw SyntaxError("expected one of coordsys, coords, map, factors, range, periodic, potential; found '" +
                            keyword.text + "'",
                        keyword.pos);
    }
    if (keyword.text != "range" && keyword.text != "periodic") {
      if (seen_statements.count(keyword.text)) throw SemanticError("duplicate " + keyword.text + " statement", keyword.pos);
      seen_statements[keyword.text] = keyword.pos;
    }
    if (keyword.text == "coordsys") {
      parser.expect(":");
      system_name = parser.identifier("system name");
    } else if (keyword.text == "coords") {
      parser.expect(":");
      coordinates = parser.identifier_list("coordinate name");
    } else if (keyword.text == "map") {
      parser.expect(":");
      do {
        Name target = parser.identifier("target coordinate name");
        parser.expect("=");
        map.emplace_back(target, parser.expression());
      } while (parser.accept(","));
    } else if (keyword.text == "factors") {
      parser.expect(":");
      do {
        std::optional<Name> label;
        if (parser.peek().kind == TokenKind::Identifier && parser.is_punct("=", 1)) {
          label = parser.identifier("scale factor label");
          parser.expect("=");
        }
        factors.emplace_back(label, parser.expression());
      } while (parser.accept(","));
    } else if (keyword.text == "range") {
      RangeStatement r;
      r.coordinate = parser.identifier("coordinate name");
      parser.expect(":");
      parser.expect("(");
      r.lo = parser.bound();
      parser.expect(",");
      r.hi = parser.bound();
      parser.expect(")");
      ranges.push_back(std::move(r));
    } else if (keyword.text == "periodic") {
      parser.expect(":");
      for (auto& n : parser.identifier_list("coordinate name")) periodic.push_back(std::move(n));
    } else {
      parser.expect(":");
      potential = parser.expression();
    }
    parser.expect(";");
  }

  const SourcePosition start{1, 1};
  if (coordinates.empty()) throw SemanticError("missing 'coords: ...;' statement", start);
  if (map.empty() == factors.empty()) {
    throw SemanticError(map.empty() ? "one of 'map' or 'factors' is required" : "'map' and 'factors' cannot both be given",
                        map.empty() ? start : seen_statements["factors"]);
  }

  CoordSysDocument doc;
  doc.name = system_name ? system_name->text : "unnamed";
  std::set<std::string> names;
  for (const auto& c : coordinates) {
    if (reserved(c.text)) throw SemanticError("'" + c.text + "' is reserved and cannot name a coordinate", c.pos);
    if (!names.insert(c.text).second) throw SemanticError("duplicate coordinate '" + c.text + "'", c.pos);
    doc.coordinates.push_back({c.text, std::nullopt, std::nullopt, false});
  }
  auto decl = [&](const Name& n) -> CoordinateDecl& {
    for (auto& c : doc.coordinates) {
      if (c.name == n.text) return c;
    }
    throw SemanticError("unknown coordinate '" + n.text + "'", n.pos);
  };

  std::set<std::string> ranged;
  for (const auto& r : ranges) {
    auto& c = decl(r.coordinate);
    if (!ranged.insert(c.name).second) throw SemanticError("duplicate range for '" + c.name + "'", r.coordinate.pos);
    c.lo = bound_value(r.lo, false);
    c.hi = bound_value(r.hi, true);
    if (!(numeric_bound(c.lo, -INFINITY) < numeric_bound(c.hi, INFINITY))) {
      throw SemanticError("empty range for '" + c.name + "'", r.lo.pos);
    }
  }
  for (const auto& n : periodic) {
    auto& c = decl(n);
    if (c.periodic) throw SemanticError("'" + c.name + "' is already periodic", n.pos);
    c.periodic = true;
    if (!ranged.count(c.name)) {
      c.lo = Expr(0);
      c.hi = Expr(2) * sym::symbol("pi");
    } else if (!c.lo || !c.hi) {
      throw SemanticError("periodic coordinate '" + c.name + "' needs a finite range", n.pos);
    }
  }

  const std::size_t dim = doc.coordinates.size();
  if (!map.empty()) {
    if (map.size() != dim) {
      throw SemanticError("map has " + std::to_string(map.size()) + " components for " + std::to_string(dim) +
                              " coordinates",
                          seen_statements["map"]);
    }
    std::set<std::string> targets;
    for (const auto& [target, expr] : map) {
      if (reserved(target.text)) throw SemanticError("'" + target.text + "' is reserved", target.pos);
      if (!targets.insert(target.text).second) throw SemanticError("duplicate map target '" + target.text + "'", target.pos);
      check_symbols(expr, names, "map component " + target.text);
      if (!expr.field_arguments.empty()) {
        throw SemanticError("map components cannot contain undetermined functions", expr.pos);
      }
      doc.map_targets.push_back(target.text);
      doc.map.push_back(expr.expr);
    }
  } else {
    if (factors.size() != dim) {
      throw SemanticError("factors has " + std::to_string(factors.size()) + " entries for " + std::to_string(dim) +
                              " coordinates",
                          seen_statements["factors"]);
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& [label, expr] = factors[i];
      const std::string expected = "h" + std::to_string(i + 1);
      if (label && label->text != expected && label->text != "h_" + doc.coordinates[i].name) {
        throw SemanticError("scale factor label '" + label->text + "' should be " + expected, label->pos);
      }
      check_symbols(expr, names, "scale factor " + expected);
      if (!expr.field_arguments.empty()) {
        throw SemanticError("scale factors cannot contain undetermined functions", expr.pos);
      }
      doc.factors.push_back(expr.expr);
    }
  }

  if (potential) {
    std::set<std::string> allowed = names;
    allowed.insert(doc.map_targets.begin(), doc.map_targets.end());
    allowed.insert(classical::kHbar);
    allowed.insert(classical::kMass);
    check_symbols(*potential, allowed, "potential");
    check_field_arguments(*potential, names, "potential");
    doc.potential = potential->expr;
  }
  return doc;
}

sym::Expr parse_expression(std::string_view text, const std::set<std::string>& allowed) {
  Parser parser(text);
  const Parsed p = parser.whole_expression();
  check_symbols(p, allowed, "expression");
  check_field_arguments(p, allowed, "expression");
  return p.expr;
}

}  // namespace gq::cli

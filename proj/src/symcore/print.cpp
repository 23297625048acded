#include <array>
#include <sstream>

#include "genquant/symcore/expr.hpp"

namespace gq::sym {

// ---------------------------------------------------------------------------
// Prefix form: the canonical serialization used by golden files.

namespace {

void prefix(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Kind::Number:
      out += e.number().str();
      return;
    case Kind::Imaginary:
      out += "I";
      return;
    case Kind::Symbol:
      out += e.name();
      return;
    case Kind::Field: {
      out += "(field ";
      out += e.name();
      out += " (";
      for (std::size_t i = 0; i < e.field_vars().size(); ++i) {
        if (i) out += ' ';
        out += e.field_vars()[i];
      }
      out += ')';
      if (!e.field_is_underived()) {
        out += " (";
        for (std::size_t i = 0; i < e.field_orders().size(); ++i) {
          if (i) out += ' ';
          out += std::to_string(e.field_orders()[i]);
        }
        out += ')';
      }
      out += ')';
      return;
    }
    case Kind::Function:
      out += '(';
      out += function_name(e.function());
      out += ' ';
      prefix(e.argument(), out);
      out += ')';
      return;
    case Kind::Power:
      out += "(^ ";
      prefix(e.base(), out);
      out += ' ';
      out += e.exponent().str();
      out += ')';
      return;
    case Kind::Sum:
    case Kind::Product:
      out += e.is(Kind::Sum) ? "(+" : "(*";
      for (const auto& op : e.operands()) {
        out += ' ';
        prefix(op, out);
      }
      out += ')';
      return;
  }
}

// Precedence levels shared by the infix and LaTeX printers.
constexpr int kSum = 1;
constexpr int kProduct = 2;
constexpr int kPower = 4;

struct Fraction {
  bool negative = false;
  std::vector<Expr> numerator;
  std::vector<Expr> denominator;  // with exponents already made positive
};

Fraction as_fraction(const Expr& e) {
  Fraction f;
  auto [c, rest] = split_coefficient(e);
  if (c.is_negative()) {
    f.negative = true;
    c = -c;
  }
  if (c.num() != 1) f.numerator.push_back(Expr(c.num()));
  if (c.den() != 1) f.denominator.push_back(Expr(c.den()));
  for (const auto& x : factors_of(rest)) {
    if (x.is_one()) continue;
    if (x.is(Kind::Power) && x.exponent().is_negative()) {
      f.denominator.push_back(pow(x.base(), -x.exponent()));
    } else {
      f.numerator.push_back(x);
    }
  }
  return f;
}

bool is_negative_term(const Expr& e) { return split_coefficient(e).first.is_negative(); }

// ---------------------------------------------------------------------------
// Infix

void infix(const Expr& e, int prec, std::string& out);

void infix_product(const Expr& e, int prec, std::string& out) {
  Fraction f = as_fraction(e);
  std::string body;
  if (f.numerator.empty()) {
    body = "1";
  } else {
    for (std::size_t i = 0; i < f.numerator.size(); ++i) {
      if (i) body += "*";
      infix(f.numerator[i], kProduct + 1, body);
    }
  }
  if (!f.denominator.empty()) {
    body += "/";
    if (f.denominator.size() == 1) {
      infix(f.denominator.front(), kPower, body);
    } else {
      body += "(";
      for (std::size_t i = 0; i < f.denominator.size(); ++i) {
        if (i) body += "*";
        infix(f.denominator[i], kProduct + 1, body);
      }
      body += ")";
    }
  }
  bool wrap = prec > kProduct || (f.negative && prec > kSum);
  if (wrap) out += "(";
  if (f.negative) out += "-";
  out += body;
  if (wrap) out += ")";
}

void infix(const Expr& e, int prec, std::string& out) {
  switch (e.kind()) {
    case Kind::Number: {
      const Rational& r = e.number();
      bool wrap = (r.is_negative() && prec > kSum) || (!r.is_integer() && prec > kProduct);
      if (wrap) out += "(";
      out += r.str();
      if (wrap) out += ")";
      return;
    }
    case Kind::Imaginary:
      out += "I";
      return;
    case Kind::Symbol:
      out += e.name();
      return;
    case Kind::Field: {
      std::string call = e.name() + "(";
      for (std::size_t i = 0; i < e.field_vars().size(); ++i) {
        if (i) call += ", ";
        call += e.field_vars()[i];
      }
      call += ")";
      if (e.field_is_underived()) {
        out += call;
        return;
      }
      out += "D[";
      bool first = true;
      for (std::size_t i = 0; i < e.field_vars().size(); ++i) {
        for (int k = 0; k < e.field_orders()[i]; ++k) {
          if (!first) out += ",";
          out += e.field_vars()[i];
          first = false;
        }
      }
      out += "]" + call;
      return;
    }
    case Kind::Function:
      out += function_name(e.function());
      out += "(";
      infix(e.argument(), 0, out);
      out += ")";
      return;
    case Kind::Power: {
      if (e.exponent().is_negative()) {
        infix_product(e, prec, out);
        return;
      }
      bool wrap = prec > kPower;
      if (wrap) out += "(";
      infix(e.base(), kPower + 1, out);
      out += "^";
      if (e.exponent().is_integer()) {
        out += e.exponent().str();
      } else {
        out += "(" + e.exponent().str() + ")";
      }
      if (wrap) out += ")";
      return;
    }
    case Kind::Product:
      infix_product(e, prec, out);
      return;
    case Kind::Sum: {
      bool wrap = prec > kSum;
      if (wrap) out += "(";
      const auto& ops = e.operands();
      for (std::size_t i = 0; i < ops.size(); ++i) {
        if (is_negative_term(ops[i])) {
          out += i ? " - " : "-";
          infix(-ops[i], kProduct, out);
        } else {
          if (i) out += " + ";
          infix(ops[i], kSum, out);
        }
      }
      if (wrap) out += ")";
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// LaTeX

constexpr std::array<const char*, 24> kGreek = {
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta",     "theta", "iota", "kappa", "lambda", "mu",
    "nu",    "xi",   "pi",    "rho",   "sigma",   "tau",  "upsilon", "phi",   "chi",  "psi",   "omega",  "varphi"};

std::string latex_name(const std::string& name) {
  if (name == "hbar") return "\\hbar";
  for (const char* g : kGreek) {
    if (name == g) return std::string("\\") + g;
  }
  if (auto pos = name.find('_'); pos != std::string::npos && pos > 0 && pos + 1 < name.size()) {
    std::string head = name.substr(0, pos);
    std::string sub = name.substr(pos + 1);
    if (head == "delta") return "\\delta " + latex_name(sub);
    return latex_name(head) + "_{" + latex_name(sub) + "}";
  }
  return name;
}

void latex(const Expr& e, int prec, std::string& out);

std::string latex_exponent(const Rational& r) {
  std::string s = r.is_integer() ? r.str() : "\\frac{" + std::to_string(r.num()) + "}{" + std::to_string(r.den()) + "}";
  if (s.size() == 1) return "^" + s;
  return "^{" + s + "}";
}

void latex_factors(const std::vector<Expr>& fs, std::string& out, bool standalone = false) {
  if (standalone && fs.size() == 1) {
    latex(fs.front(), 0, out);
    return;
  }
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += " ";
    latex(fs[i], kProduct + 1, out);
  }
}

void latex_product(const Expr& e, int prec, std::string& out) {
  Fraction f = as_fraction(e);
  std::string body;
  if (f.denominator.empty()) {
    latex_factors(f.numerator, body);
  } else {
    std::string num;
    std::string den;
    if (f.numerator.empty()) {
      num = "1";
    } else {
      latex_factors(f.numerator, num, true);
    }
    latex_factors(f.denominator, den, true);
    body = "\\frac{" + num + "}{" + den + "}";
  }
  bool wrap = f.negative && prec > kSum;
  if (wrap) out += "\\left(";
  if (f.negative) out += "-";
  out += body;
  if (wrap) out += "\\right)";
}

void latex(const Expr& e, int prec, std::string& out) {
  switch (e.kind()) {
    case Kind::Number: {
      const Rational& r = e.number();
      bool wrap = r.is_negative() && prec > kSum;
      if (wrap) out += "\\left(";
      if (r.is_negative()) out += "-";
      Rational a = r.is_negative() ? -r : r;
      if (a.is_integer()) {
        out += a.str();
      } else {
        out += "\\frac{" + std::to_string(a.num()) + "}{" + std::to_string(a.den()) + "}";
      }
      if (wrap) out += "\\right)";
      return;
    }
    case Kind::Imaginary:
      out += "i";
      return;
    case Kind::Symbol:
      out += latex_name(e.name());
      return;
    case Kind::Field: {
      if (e.field_is_underived()) {
        out += latex_name(e.name());
        return;
      }
      int total = 0;
      std::string den;
      for (std::size_t i = 0; i < e.field_vars().size(); ++i) {
        int n = e.field_orders()[i];
        if (n == 0) continue;
        total += n;
        if (!den.empty()) den += " ";
        den += "\\partial " + latex_name(e.field_vars()[i]);
        if (n > 1) den += "^{" + std::to_string(n) + "}";
      }
      std::string num = "\\partial";
      if (total > 1) num += "^{" + std::to_string(total) + "}";
      out += "\\frac{" + num + " " + latex_name(e.name()) + "}{" + den + "}";
      return;
    }
    case Kind::Function: {
      Fn fn = e.function();
      if (fn == Fn::Exp) {
        out += "e^{";
        latex(e.argument(), 0, out);
        out += "}";
        return;
      }
      out += "\\";
      out += function_name(fn);
      out += "\\left(";
      latex(e.argument(), 0, out);
      out += "\\right)";
      return;
    }
    case Kind::Power: {
      const Rational& n = e.exponent();
      if (n.is_negative()) {
        latex_product(e, prec, out);
        return;
      }
      if (n == Rational(1, 2)) {
        out += "\\sqrt{";
        latex(e.base(), 0, out);
        out += "}";
        return;
      }
      const Expr& b = e.base();
      if (b.is(Kind::Function) && b.function() != Fn::Exp) {
        out += "\\";
        out += function_name(b.function());
        out += latex_exponent(n);
        out += "\\left(";
        latex(b.argument(), 0, out);
        out += "\\right)";
        return;
      }
      bool wrap = !(b.is(Kind::Symbol) || b.is(Kind::Field) || (b.is_number() && !b.number().is_negative() &&
                                                               b.number().is_integer()));
      if (wrap) out += "\\left(";
      latex(b, 0, out);
      if (wrap) out += "\\right)";
      out += latex_exponent(n);
      return;
    }
    case Kind::Product:
      latex_product(e, prec, out);
      return;
    case Kind::Sum: {
      bool wrap = prec > kSum;
      if (wrap) out += "\\left(";
      const auto& ops = e.operands();
      for (std::size_t i = 0; i < ops.size(); ++i) {
        if (is_negative_term(ops[i])) {
          out += i ? " - " : "-";
          latex(-ops[i], kProduct, out);
        } else {
          if (i) out += " + ";
          latex(ops[i], kSum, out);
        }
      }
      if (wrap) out += "\\right)";
      return;
    }
  }
}

}  // namespace

std::string to_prefix(const Expr& e) {
  std::string out;
  prefix(e, out);
  return out;
}

std::string to_infix(const Expr& e) {
  std::string out;
  infix(e, 0, out);
  return out;
}

std::string to_latex(const Expr& e) {
  std::string out;
  latex(e, 0, out);
  return out;
}

}  // namespace gq::sym

#include "genquant/symcore/evaluate.hpp"

#include <cmath>
#include <numbers>

#include "genquant/error.hpp"

namespace gq::sym {

namespace {

Complex int_power(Complex z, std::int64_t n) {
  if (n < 0) return Complex(1.0) / int_power(z, -n);
  Complex r(1.0);
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

double int_power(double x, std::int64_t n) {
  if (n < 0) return 1.0 / int_power(x, -n);
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

}  // namespace

Complex evaluate(const Expr& e, const NumericEnv& env) {
  switch (e.kind()) {
    case Kind::Number:
      return e.number().to_double();
    case Kind::Imaginary:
      return Complex(0.0, 1.0);
    case Kind::Symbol: {
      auto it = env.symbols.find(e.name());
      if (it != env.symbols.end()) return it->second;
      if (e.name() == "pi") return std::numbers::pi;
      throw EvaluationError("unbound symbol '" + e.name() + "'");
    }
    case Kind::Field:
      if (!env.fields) throw EvaluationError("no value for field " + to_prefix(e));
      return env.fields(e);
    case Kind::Sum: {
      Complex acc(0.0);
      for (const auto& t : e.operands()) acc += evaluate(t, env);
      return acc;
    }
    case Kind::Product: {
      Complex acc(1.0);
      for (const auto& f : e.operands()) acc *= evaluate(f, env);
      return acc;
    }
    case Kind::Power: {
      Complex b = evaluate(e.base(), env);
      const Rational& n = e.exponent();
      if (n.is_integer()) return int_power(b, n.num());
      if (b.imag() == 0.0 && b.real() >= 0.0) return std::pow(b.real(), n.to_double());
      return std::pow(b, n.to_double());
    }
    case Kind::Function: {
      Complex a = evaluate(e.argument(), env);
      switch (e.function()) {
        case Fn::Sin: return std::sin(a);
        case Fn::Cos: return std::cos(a);
        case Fn::Tan: return std::tan(a);
        case Fn::Cot: return std::cos(a) / std::sin(a);
        case Fn::Exp: return std::exp(a);
        case Fn::Log: return std::log(a);
        case Fn::Sqrt: return std::sqrt(a);
      }
    }
  }
  throw EvaluationError("cannot evaluate " + to_prefix(e));
}

double evaluate_real(const Expr& e, const NumericEnv& env) {
  Complex z = evaluate(e, env);
  if (std::abs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z))) {
    throw EvaluationError("expression is not real-valued: " + to_prefix(e));
  }
  return z.real();
}

CompiledExpr::CompiledExpr(const Expr& e, const std::vector<std::string>& slots,
                           const std::map<std::string, double>& constants) {
  emit(e, slots, constants);
  std::size_t depth = 0;
  for (const auto& ins : program_) {
    switch (ins.op) {
      case Op::Const:
      case Op::Var:
        ++depth;
        break;
      case Op::Add:
      case Op::Mul:
        depth -= static_cast<std::size_t>(ins.arg) - 1;
        break;
      default:
        break;
    }
    max_stack_ = std::max(max_stack_, depth);
  }
}

void CompiledExpr::emit(const Expr& e, const std::vector<std::string>& slots,
                        const std::map<std::string, double>& constants) {
  switch (e.kind()) {
    case Kind::Number:
      program_.push_back({Op::Const, 0, e.number().to_double()});
      return;
    case Kind::Symbol: {
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i] == e.name()) {
          program_.push_back({Op::Var, static_cast<int>(i), 0.0});
          return;
        }
      }
      if (auto it = constants.find(e.name()); it != constants.end()) {
        program_.push_back({Op::Const, 0, it->second});
        return;
      }
      if (e.name() == "pi") {
        program_.push_back({Op::Const, 0, std::numbers::pi});
        return;
      }
      throw EvaluationError("unbound symbol '" + e.name() + "' in compiled expression");
    }
    case Kind::Sum:
    case Kind::Product:
      for (const auto& op : e.operands()) emit(op, slots, constants);
      program_.push_back({e.is(Kind::Sum) ? Op::Add : Op::Mul, static_cast<int>(e.operands().size()), 0.0});
      return;
    case Kind::Power:
      emit(e.base(), slots, constants);
      if (e.exponent().is_integer()) {
        program_.push_back({Op::PowInt, static_cast<int>(e.exponent().num()), 0.0});
      } else {
        program_.push_back({Op::PowReal, 0, e.exponent().to_double()});
      }
      return;
    case Kind::Function: {
      Fn fn = e.function();
      emit(e.argument(), slots, constants);
      switch (fn) {
        case Fn::Sin: program_.push_back({Op::Sin}); return;
        case Fn::Cos: program_.push_back({Op::Cos}); return;
        case Fn::Exp: program_.push_back({Op::Exp}); return;
        case Fn::Log: program_.push_back({Op::Log}); return;
        default: break;
      }
      throw EvaluationError("function not supported in compiled expression: " + std::string(function_name(fn)));
    }
    case Kind::Imaginary:
    case Kind::Field:
      throw EvaluationError("compiled expressions must be real and field-free: " + to_prefix(e));
  }
}

double CompiledExpr::operator()(std::span<const double> values) const {
  // Small fixed stack; coefficient expressions are shallow.
  std::vector<double> stack;
  stack.reserve(max_stack_ + 1);
  for (const auto& ins : program_) {
    switch (ins.op) {
      case Op::Const: stack.push_back(ins.value); break;
      case Op::Var: stack.push_back(values[static_cast<std::size_t>(ins.arg)]); break;
      case Op::Add: {
        double acc = 0.0;
        for (int i = 0; i < ins.arg; ++i) {
          acc += stack.back();
          stack.pop_back();
        }
        stack.push_back(acc);
        break;
      }
      case Op::Mul: {
        double acc = 1.0;
        for (int i = 0; i < ins.arg; ++i) {
          acc *= stack.back();
          stack.pop_back();
        }
        stack.push_back(acc);
        break;
      }
      case Op::PowInt: stack.back() = int_power(stack.back(), ins.arg); break;
      case Op::PowReal: stack.back() = std::pow(stack.back(), ins.value); break;
      case Op::Sin: stack.back() = std::sin(stack.back()); break;
      case Op::Cos: stack.back() = std::cos(stack.back()); break;
      case Op::Exp: stack.back() = std::exp(stack.back()); break;
      case Op::Log: stack.back() = std::log(stack.back()); break;
    }
  }
  return stack.empty() ? 0.0 : stack.back();
}

}  // namespace gq::sym

#pragma once

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "genquant/symcore/expr.hpp"

namespace gq::sym {

using Complex = std::complex<double>;

/// Values for a numeric evaluation. The symbol `pi` evaluates to M_PI unless
/// bound explicitly. Field atoms are resolved through `fields`; evaluating a
/// field without a resolver is an EvaluationError.
struct NumericEnv {
  std::map<std::string, Complex, std::less<>> symbols;
  std::function<Complex(const Expr& field)> fields;
};

Complex evaluate(const Expr& e, const NumericEnv& env);

/// Real-valued evaluation; throws EvaluationError if the result has an
/// imaginary part larger than 1e-12 relative to its modulus.
double evaluate_real(const Expr& e, const NumericEnv& env);

/// Real expression compiled to a flat postfix program over fixed variable
/// slots, for evaluating the same coefficient at many grid nodes.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  /// Symbols not listed in `slots` must appear in `constants` (or be `pi`).
  CompiledExpr(const Expr& e, const std::vector<std::string>& slots,
               const std::map<std::string, double>& constants = {});

  double operator()(std::span<const double> values) const;

 private:
  enum class Op : std::uint8_t { Const, Var, Add, Mul, PowInt, PowReal, Sin, Cos, Exp, Log };
  struct Instr {
    Op op;
    int arg = 0;       // slot index / operand count / integer exponent
    double value = 0;  // constant / real exponent
  };
  void emit(const Expr& e, const std::vector<std::string>& slots, const std::map<std::string, double>& constants);

  std::vector<Instr> program_;
  std::size_t max_stack_ = 0;
};

}  // namespace gq::sym

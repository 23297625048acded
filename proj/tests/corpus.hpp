#pragma once

#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "genquant/symcore/expr.hpp"

namespace doctest {
template <>
struct StringMaker<gq::sym::Expr> {
  static String convert(const gq::sym::Expr& e) { return gq::sym::to_infix(e).c_str(); }
};
}  // namespace doctest

namespace gq::testing {

/// Seeded random expressions over `vars`, built from sums, products, small
/// integer powers, sin, cos, exp and reciprocals of positive quantities, so
/// every member is finite on the whole real line.
class ExprCorpus {
 public:
  ExprCorpus(std::vector<std::string> vars, std::uint64_t seed) : vars_(std::move(vars)), rng_(seed) {}

  sym::Expr next(int depth = 3) {
    if (depth == 0 || pick(4) == 0) return leaf();
    switch (pick(7)) {
      case 0: return next(depth - 1) + next(depth - 1);
      case 1: return next(depth - 1) * next(depth - 1);
      case 2: return sym::pow(next(depth - 1), sym::Rational(pick(3) + 2));
      case 3: return sym::sin(next(depth - 1));
      case 4: return sym::cos(next(depth - 1));
      case 5: return sym::exp(sym::Rational(1, 2) * sym::sin(next(depth - 1)));
      default: {
        const sym::Expr inner = next(depth - 1);
        return sym::Expr(1) / (sym::Expr(2) + inner * inner);
      }
    }
  }

  std::vector<sym::Expr> take(int n, int depth = 3) {
    std::vector<sym::Expr> out;
    while (static_cast<int>(out.size()) < n) {
      sym::Expr e = next(depth);
      if (!e.is_number()) out.push_back(e);
    }
    return out;
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  sym::Expr leaf() {
    if (pick(3) == 0) {
      const int num = pick(9) - 4;
      return sym::Expr(sym::Rational(num == 0 ? 1 : num, pick(3) + 1));
    }
    return sym::symbol(vars_[static_cast<std::size_t>(pick(static_cast<int>(vars_.size())))]);
  }

  std::vector<std::string> vars_;
  std::mt19937_64 rng_;
};

}  // namespace gq::testing

#include "genquant/symcore/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "genquant/error.hpp"

namespace gq::sym {

Rational make_reduced(std::int64_t num, std::int64_t den) { return Rational(Rational::Reduced{}, num, den); }

namespace {

using i128 = __int128;

Rational normalized(i128 num, i128 den) {
  if (den == 0) throw EvaluationError("division by zero in exact arithmetic");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr auto lo = std::numeric_limits<std::int64_t>::min() + 1;
  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) throw OverflowError("rational constant exceeds 64-bit range");
  return make_reduced(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

// Integer k-th root of a non-negative value, if exact.
std::optional<std::int64_t> exact_root(std::int64_t value, std::int64_t k) {
  if (value < 0) return std::nullopt;
  if (value <= 1) return value;
  auto guess = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(value), 1.0 / k)));
  for (std::int64_t c = std::max<std::int64_t>(0, guess - 1); c <= guess + 1; ++c) {
    i128 p = 1;
    for (std::int64_t i = 0; i < k && p <= value; ++i) p *= c;
    if (p == value) return c;
  }
  return std::nullopt;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) { *this = normalized(num, den); }

Rational Rational::operator-() const { return normalized(-static_cast<i128>(num_), den_); }

Rational Rational::reciprocal() const { return normalized(den_, num_); }

Rational operator+(const Rational& a, const Rational& b) {
  return normalized(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                    static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return normalized(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return normalized(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<i128>(a.num_) * b.den_ <=> static_cast<i128>(b.num_) * a.den_;
}

std::optional<Rational> Rational::exact_pow(const Rational& base, const Rational& exponent) {
  if (exponent.is_zero()) return Rational(1);
  if (base.is_zero()) {
    if (exponent.is_negative()) throw EvaluationError("zero raised to a negative power");
    return Rational(0);
  }
  if (base.is_one()) return Rational(1);
  Rational b = base;
  std::int64_t n = exponent.num();
  if (n < 0) {
    b = b.reciprocal();
    n = -n;
  }
  if (!exponent.is_integer()) {
    if (b.is_negative()) return std::nullopt;
    auto rn = exact_root(b.num(), exponent.den());
    auto rd = exact_root(b.den(), exponent.den());
    if (!rn || !rd) return std::nullopt;
    b = Rational(*rn, *rd);
  }
  Rational result(1);
  Rational square = b;
  while (n > 0) {
    if (n & 1) result *= square;
    n >>= 1;
    if (n > 0) square *= square;
  }
  return result;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace gq::sym

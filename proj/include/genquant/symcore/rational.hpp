#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace gq::sym {

/// Exact rational number with 64-bit numerator and denominator. Always kept in
/// lowest terms with a positive denominator; arithmetic throws OverflowError
/// instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const;
  Rational reciprocal() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Exact power when the result is rational (integer exponents, or perfect
  /// roots such as 4^(1/2)); nullopt otherwise.
  static std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent);

  /// "3", "-1/2".
  std::string str() const;

 private:
  friend Rational make_reduced(std::int64_t num, std::int64_t den);
  struct Reduced {};
  constexpr Rational(Reduced, std::int64_t num, std::int64_t den) : num_(num), den_(den) {}

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace gq::sym

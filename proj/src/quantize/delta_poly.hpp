#pragma once

#include <map>
#include <string>
#include <vector>

#include "genquant/quantize/quantize.hpp"

namespace gq::quantize {

/// Polynomial in the displacement symbols with symbolic coefficients,
/// truncated at a maximum total degree.
class DeltaPoly {
 public:
  using Exponents = std::vector<int>;

  DeltaPoly(int dimension, int max_degree) : dim_(dimension), max_degree_(max_degree) {}

  int dimension() const { return dim_; }
  int max_degree() const { return max_degree_; }
  const std::map<Exponents, Expr>& terms() const { return terms_; }

  void add(const Exponents& exponents, const Expr& coefficient);
  DeltaPoly operator*(const DeltaPoly& other) const;
  /// d/d(delta_i).
  DeltaPoly derivative_delta(int i) const;
  /// Derivative of every coefficient by a non-displacement variable.
  DeltaPoly derivative(const std::string& var) const;
  /// Multiplies by an expression that may contain displacement symbols.
  DeltaPoly times(const Expr& factor, const std::vector<std::string>& displacements) const;
  void expand_coefficients();

  std::vector<sym::MonomialTerm> to_terms(const std::vector<std::string>& displacements) const;

 private:
  int dim_;
  int max_degree_;
  std::map<Exponents, Expr> terms_;
};

/// Amplitude polynomial times the phase factor's Taylor series, up to `max_degree`.
DeltaPoly expansion_density(const AmplitudeExpansion& amplitude, int max_degree);

}  // namespace gq::quantize

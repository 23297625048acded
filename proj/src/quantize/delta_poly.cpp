#include "delta_poly.hpp"

#include "genquant/error.hpp"

namespace gq::quantize {

namespace {

int degree(const DeltaPoly::Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

DeltaPoly::Exponents exponents_of(const Expr& monomial, const std::vector<std::string>& displacements) {
  DeltaPoly::Exponents out(displacements.size(), 0);
  for (const auto& f : sym::factors_of(monomial)) {
    if (f.is_one()) continue;
    const Expr& base = f.is(sym::Kind::Power) ? f.base() : f;
    const int power = f.is(sym::Kind::Power) ? static_cast<int>(f.exponent().num()) : 1;
    bool found = false;
    for (std::size_t i = 0; i < displacements.size(); ++i) {
      if (base.is(sym::Kind::Symbol) && base.name() == displacements[i]) {
        out[i] += power;
        found = true;
      }
    }
    if (!found) throw UnsupportedExpressionError("not a displacement monomial: " + sym::to_infix(monomial));
  }
  return out;
}

}  // namespace

void DeltaPoly::add(const Exponents& exponents, const Expr& coefficient) {
  if (coefficient.is_zero() || degree(exponents) > max_degree_) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
  if (!inserted) it->second = it->second + coefficient;
}

DeltaPoly DeltaPoly::operator*(const DeltaPoly& other) const {
  DeltaPoly out(dim_, std::min(max_degree_, other.max_degree_));
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      Exponents e(static_cast<std::size_t>(dim_));
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      if (degree(e) > out.max_degree_) continue;
      out.add(e, sym::expand(ca * cb));
    }
  }
  return out;
}

DeltaPoly DeltaPoly::derivative_delta(int i) const {
  DeltaPoly out(dim_, max_degree_);
  const auto k = static_cast<std::size_t>(i);
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponents lowered = e;
    lowered[k] -= 1;
    out.add(lowered, Expr(e[k]) * c);
  }
  return out;
}

DeltaPoly DeltaPoly::derivative(const std::string& var) const {
  DeltaPoly out(dim_, max_degree_);
  for (const auto& [e, c] : terms_) out.add(e, sym::differentiate(c, var));
  return out;
}

DeltaPoly DeltaPoly::times(const Expr& factor, const std::vector<std::string>& displacements) const {
  DeltaPoly out(dim_, max_degree_);
  for (const auto& [monomial, c] : sym::split_monomials(factor, displacements)) {
    const Exponents shift = exponents_of(monomial, displacements);
    for (const auto& [e, coefficient] : terms_) {
      Exponents sum = e;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += shift[i];
      out.add(sum, c * coefficient);
    }
  }
  return out;
}

void DeltaPoly::expand_coefficients() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = sym::expand(it->second);
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
}

std::vector<sym::MonomialTerm> DeltaPoly::to_terms(const std::vector<std::string>& displacements) const {
  std::vector<sym::MonomialTerm> out;
  for (const auto& [e, c] : terms_) {
    std::vector<Expr> factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) factors.push_back(sym::pow(sym::symbol(displacements[i]), e[i]));
    }
    out.push_back({sym::make_product(std::move(factors)), c});
  }
  return out;
}

DeltaPoly expansion_density(const AmplitudeExpansion& amplitude, int max_degree) {
  const int n = static_cast<int>(amplitude.coordinates.size());
  const auto un = static_cast<std::size_t>(n);
  DeltaPoly poly(n, max_degree);
  poly.add(DeltaPoly::Exponents(un, 0), amplitude.constant);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      DeltaPoly::Exponents e(un, 0);
      e[static_cast<std::size_t>(i)] += 1;
      e[static_cast<std::size_t>(j)] += 1;
      poly.add(e, amplitude.monomial_coefficient(i, j));
    }
  }
  // exp(L) with L = (i/hbar) sum_k delta_k dS/du_k, as a truncated series.
  DeltaPoly linear(n, max_degree);
  const Expr scale = sym::imaginary_unit() / sym::symbol(classical::kHbar);
  for (int k = 0; k < n; ++k) {
    DeltaPoly::Exponents e(un, 0);
    e[static_cast<std::size_t>(k)] = 1;
    linear.add(e, scale * amplitude.phase_gradient[static_cast<std::size_t>(k)]);
  }
  DeltaPoly series(n, max_degree);
  DeltaPoly power(n, max_degree);
  power.add(DeltaPoly::Exponents(un, 0), Expr(1));
  series.add(DeltaPoly::Exponents(un, 0), Expr(1));
  std::int64_t factorial = 1;
  for (int order = 1; order <= max_degree; ++order) {
    power = power * linear;
    factorial *= order;
    for (const auto& [e, c] : power.terms()) series.add(e, c / Expr(factorial));
  }
  DeltaPoly out = poly * series;
  out.expand_coefficients();
  return out;
}

}  // namespace gq::quantize

#include "genquant/symcore/equivalence.hpp"

#include <atomic>
#include <cmath>
#include <random>

#include "genquant/error.hpp"
#include "genquant/symcore/evaluate.hpp"

namespace gq::sym {

namespace {

std::atomic<std::uint64_t> g_default_seed{kDefaultSeed};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double unit_from_bits(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

bool usable(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()) && std::abs(z) < 1e100; }

}  // namespace

std::uint64_t default_seed() { return g_default_seed.load(std::memory_order_relaxed); }
void set_default_seed(std::uint64_t seed) { g_default_seed.store(seed, std::memory_order_relaxed); }

Interval SampleDomain::of(std::string_view symbol) const {
  auto it = intervals.find(symbol);
  return it == intervals.end() ? fallback : it->second;
}

SampleDomain SampleDomain::merged(const SampleDomain& other) const {
  SampleDomain out = *this;
  for (const auto& [k, v] : other.intervals) out.intervals[k] = v;
  return out;
}

EquivalenceResult check_equivalent(const Expr& a, const Expr& b, const EquivalenceOptions& options) {
  EquivalenceResult result;
  if (a == b) {
    result.equivalent = result.canonical = true;
    return result;
  }
  const Expr difference = expand(a - b);
  if (difference.is_zero()) {
    result.equivalent = result.canonical = true;
    return result;
  }

  std::set<std::string> symbols = free_symbols(a);
  for (const auto& s : free_symbols(b)) symbols.insert(s);
  symbols.erase("pi");

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int max_attempts = options.samples * options.attempts_per_sample;
  const Interval fv = options.domain.field_values;

  int attempts = 0;
  while (result.points < options.samples && attempts < max_attempts) {
    const auto attempt = static_cast<std::uint64_t>(attempts++);
    NumericEnv env;
    for (const auto& s : symbols) {
      Interval iv = options.domain.of(s);
      env.symbols[s] = iv.lo + (iv.hi - iv.lo) * unit(rng);
    }
    env.fields = [&](const Expr& f) -> Complex {
      std::uint64_t bits = splitmix64(fnv1a(to_prefix(f)) ^ splitmix64(options.seed + attempt));
      return fv.lo + (fv.hi - fv.lo) * unit_from_bits(bits);
    };
    Complex va;
    Complex vb;
    try {
      va = evaluate(a, env);
      vb = evaluate(b, env);
    } catch (const EvaluationError&) {
      continue;
    }
    if (!usable(va) || !usable(vb)) continue;
    ++result.points;
    double residual = std::abs(va - vb) / (1.0 + std::abs(va));
    result.max_residual = std::max(result.max_residual, residual);
  }
  if (result.points == 0) {
    throw InconclusiveError("equivalence sampling hit a singularity at every attempt");
  }
  if (result.points < options.samples && result.max_residual < options.tol) {
    throw InconclusiveError("equivalence sampling found only " + std::to_string(result.points) + " of " +
                            std::to_string(options.samples) + " usable points");
  }
  result.equivalent = result.max_residual < options.tol;
  return result;
}

bool equivalent(const Expr& a, const Expr& b, double tol, const SampleDomain& domain) {
  EquivalenceOptions options;
  options.tol = tol;
  options.domain = domain;
  return check_equivalent(a, b, options).equivalent;
}

}  // namespace gq::sym

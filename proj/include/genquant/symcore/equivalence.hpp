#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "genquant/symcore/expr.hpp"

namespace gq::sym {

/// Seed used by every randomized check unless overridden. The command line
/// tool exposes it as --seed / GENQUANT_SEED.
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// Process-wide default for EquivalenceOptions::seed (atomic).
std::uint64_t default_seed();
void set_default_seed(std::uint64_t seed);

struct Interval {
  double lo = 0.25;
  double hi = 1.25;
};

/// Where sample points are drawn from. Symbols without an explicit interval
/// use `fallback`; every distinct field atom (a function or one of its
/// partial derivatives) gets an independent value from `field_values`,
/// which makes a passing check an identity in the jet variables.
struct SampleDomain {
  std::map<std::string, Interval, std::less<>> intervals;
  Interval fallback{0.25, 1.25};
  Interval field_values{0.5, 1.5};

  Interval of(std::string_view symbol) const;
  SampleDomain merged(const SampleDomain& other) const;
};

struct EquivalenceOptions {
  double tol = 1e-9;
  int samples = 64;
  std::uint64_t seed = default_seed();
  SampleDomain domain;
  /// Attempts per required sample before giving up as inconclusive.
  int attempts_per_sample = 16;
};

struct EquivalenceResult {
  bool equivalent = false;
  bool canonical = false;
  double max_residual = 0.0;
  int points = 0;
};

/// True iff the canonical forms of a and b (or of expand(a - b)) agree, or if
/// |a - b| < tol * (1 + |a|) at `samples` pseudo-random interior points.
/// Throws InconclusiveError when no usable point could be found.
EquivalenceResult check_equivalent(const Expr& a, const Expr& b, const EquivalenceOptions& options = {});

bool equivalent(const Expr& a, const Expr& b, double tol, const SampleDomain& domain = {});
inline bool equivalent(const Expr& a, const Expr& b) { return equivalent(a, b, 1e-9); }

}  // namespace gq::sym

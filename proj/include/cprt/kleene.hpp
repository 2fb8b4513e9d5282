#pragma once

// Truncated Kleene iteration of the expected-runtime transformer
//
//   L(f)(x) = 1 + sum_j p_j f(x + j) + p' f(d)   for x > 0,   L(f)(x) = 0 otherwise,
//
// started from the zero function. (L^n 0)(x0) is the expected number of
// iterations cut off after n steps, so it increases to rt(x0) from below.

#include <cstdint>
#include <optional>
#include <vector>

#include "cprt/numeric.hpp"
#include "cprt/program.hpp"

namespace cprt {

struct KleeneOptions {
  unsigned precision_digits = 40;
  /// Exact rationals are used while n * (k + m) + 1 stays at or below this.
  std::size_t exact_window_limit = 512;
  /// ResourceError above this many states.
  std::size_t window_limit = std::size_t{1} << 24;
};

struct KleeneResult {
  std::int64_t x0 = 0;
  std::uint64_t iterations = 0;
  Real value;
  /// (L^n 0)(x0) - (L^{n-1} 0)(x0), the mass still in the loop after n - 1 steps.
  Real last_increment;
  bool exact = false;
  std::optional<Rational> exact_value;
};

/// (L^n 0)(x0) by propagating the distribution of the walk forward.
KleeneResult kleene_iterate(const RandomWalkProgram& rw, std::int64_t x0, std::uint64_t n,
                            const KleeneOptions& options = {});

/// Iterates until the increment falls below `increment_tolerance` (or
/// `max_iterations` is reached) and reports the first such n.
KleeneResult kleene_until(const RandomWalkProgram& rw, std::int64_t x0, const Real& increment_tolerance,
                          std::uint64_t max_iterations, const KleeneOptions& options = {});

struct KleeneTable {
  std::uint64_t iterations = 0;
  std::int64_t lo = 0;
  std::vector<Real> values;  // values[i] = (L^n 0)(lo + i)

  std::int64_t hi() const { return lo + static_cast<std::int64_t>(values.size()) - 1; }
  const Real& at(std::int64_t x) const { return values.at(static_cast<std::size_t>(x - lo)); }
};

/// (L^n 0)(x) for every x in [lo, hi], by backward dynamic programming.
KleeneTable kleene_table(const RandomWalkProgram& rw, std::int64_t lo, std::int64_t hi, std::uint64_t n,
                         const KleeneOptions& options = {});

}  // namespace cprt

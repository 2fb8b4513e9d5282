#pragma once

// Two-sample chi-squared comparison of termination-time histograms, used to
// check that a program and its random walk form terminate alike.

#include <cstdint>
#include <span>

#include "cprt/program.hpp"

namespace cprt {

struct HistogramTest {
  double statistic = 0;
  unsigned degrees_of_freedom = 0;
  double p_value = 1;
  double alpha = 0.001;
  unsigned bins = 0;
  std::uint64_t trials_a = 0;
  std::uint64_t trials_b = 0;
  bool passed = true;  // p_value >= alpha
};

/// Bins hold consecutive termination times until they reach `min_bin_count`
/// observations (both samples together); censored runs (time == step_cap)
/// form a bin of their own.
HistogramTest chi_squared_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                     std::uint64_t step_cap, double alpha = 0.001,
                                     std::uint64_t min_bin_count = 10);

struct DistributionMatchOptions {
  std::uint64_t trials = 20000;
  std::uint64_t step_cap = 1000000;
  std::uint64_t seed = 0;
  double alpha = 0.001;
  unsigned threads = 1;
};

/// Simulates `prog` from `x0` and its random walk form from rdw(x0), with
/// independent seeds, and compares the termination-time histograms.
HistogramTest distribution_match(const CpProgram& prog, std::span<const std::int64_t> x0,
                                 const DistributionMatchOptions& options = {});

/// Same comparison between two arbitrary programs.
HistogramTest compare_programs(const CpProgram& a, std::span<const std::int64_t> x0_a, const CpProgram& b,
                               std::span<const std::int64_t> x0_b, const DistributionMatchOptions& options = {});

}  // namespace cprt

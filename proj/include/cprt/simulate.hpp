#pragma once

// Seeded Monte-Carlo estimation of the expected runtime. Every trial draws
// from its own SplitMix64 stream derived from (seed, trial), and the
// aggregate uses exact integer sums, so results do not depend on how trials
// are split across threads.

#include <cstdint>
#include <span>
#include <vector>

#include "cprt/program.hpp"

namespace cprt {

struct SimulationOptions {
  std::uint64_t trials = 100000;
  std::uint64_t step_cap = 1000000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct SimEstimate {
  double mean = 0;           // over uncensored trials
  double half_width_95 = 0;  // 1.96 * sample standard deviation / sqrt(uncensored)
  std::uint64_t trials = 0;
  std::uint64_t censored = 0;  // trials that hit the step cap
  std::uint64_t seed = 0;
  std::uint64_t step_cap = 0;

  friend bool operator==(const SimEstimate&, const SimEstimate&) = default;
};

/// SplitMix64: a 64-bit counter passed through an avalanche mix.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();
  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t state_;
};

/// The generator used for trial `trial` of a run seeded with `seed`.
SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial);

SimEstimate simulate(const CpProgram& prog, std::span<const std::int64_t> x0, const SimulationOptions& options);
SimEstimate simulate(const RandomWalkProgram& rw, std::int64_t x0, const SimulationOptions& options);

/// Per-trial termination times in trial order; censored trials report `step_cap`.
std::vector<std::uint64_t> termination_times(const CpProgram& prog, std::span<const std::int64_t> x0,
                                             const SimulationOptions& options);
std::vector<std::uint64_t> termination_times(const RandomWalkProgram& rw, std::int64_t x0,
                                             const SimulationOptions& options);

}  // namespace cprt

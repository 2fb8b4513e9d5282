#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "cprt/program.hpp"

namespace cprt {

/// z |-> a.z - b : the distance of a state from leaving the loop.
struct RdwMap {
  IntVector guard_a;
  std::int64_t guard_b = 0;

  std::int64_t apply(std::span<const std::int64_t> z) const;

  friend bool operator==(const RdwMap&, const RdwMap&) = default;
};

struct Reduction {
  RandomWalkProgram walk;
  RdwMap rdw;
};

/// Projects a validated program onto the one-dimensional walk of a.x - b.
/// Offsets are aggregated by a.c_j; k and m span the offsets that carry
/// positive probability.
Reduction to_random_walk(const CpProgram& prog);

/// The reduced program, when `prog` already is a random walk program.
std::optional<RandomWalkProgram> as_random_walk(const CpProgram& prog);

/// a = 0, or the reduced program is `while (x > 0) { x = x [1]; }`.
bool is_trivial(const CpProgram& prog);
bool is_trivial(const RandomWalkProgram& rw);

}  // namespace cprt

#include "cprt/reduction.hpp"

#include <algorithm>
#include <map>

#include "cprt/errors.hpp"

namespace cprt {

std::int64_t RdwMap::apply(std::span<const std::int64_t> z) const {
  std::int64_t az = dot(guard_a, z);
  std::int64_t out = 0;
  if (__builtin_sub_overflow(az, guard_b, &out)) throw ValidationError("integer overflow in a.z - b");
  return out;
}

Reduction to_random_walk(const CpProgram& prog) {
  std::map<std::int64_t, Rational> mass;
  std::int64_t lo = 0, hi = 0;
  for (const auto& br : prog.branches) {
    std::int64_t j = dot(prog.guard_a, br.delta);
    mass[j] += br.prob;
    if (br.prob > 0) {
      lo = std::min(lo, j);
      hi = std::max(hi, j);
    }
  }
  const auto k = static_cast<unsigned>(-lo);
  const auto m = static_cast<unsigned>(hi);
  std::vector<Rational> probs(std::size_t{k} + m + 1);
  for (const auto& [j, p] : mass)
    if (j >= lo && j <= hi) probs[static_cast<std::size_t>(j - lo)] = p;

  RdwMap rdw{prog.guard_a, prog.guard_b};
  std::int64_t target = prog.reset ? rdw.apply(prog.reset->target) : 0;
  return {RandomWalkProgram(m, k, std::move(probs), prog.direct_prob(), target), std::move(rdw)};
}

std::optional<RandomWalkProgram> as_random_walk(const CpProgram& prog) {
  if (!has_random_walk_form(prog)) return std::nullopt;
  return to_random_walk(prog).walk;
}

bool is_trivial(const RandomWalkProgram& rw) {
  return rw.m() == 0 && rw.k() == 0 && rw.prob(0) == 1 && rw.direct_prob() == 0;
}

bool is_trivial(const CpProgram& prog) {
  if (std::all_of(prog.guard_a.begin(), prog.guard_a.end(), [](std::int64_t a) { return a == 0; })) return true;
  return is_trivial(to_random_walk(prog).walk);
}

}  // namespace cprt

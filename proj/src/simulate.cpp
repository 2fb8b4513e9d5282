#include "cprt/simulate.hpp"

#include <cmath>
#include <thread>

#include "cprt/errors.hpp"

namespace cprt {

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
  return SplitMix64(SplitMix64::mix(seed) ^ SplitMix64::mix(trial + 0x632be59bd9b4e019ULL));
}

namespace {

/// Branch i is taken when u < threshold[i] for the first such i; the
/// thresholds are floor(2^64 * cumulative probability), computed exactly.
/// The final entry stands for "everything else" and is never compared.
std::vector<std::uint64_t> thresholds(const std::vector<Rational>& probs) {
  std::vector<std::uint64_t> out;
  Rational cumulative = 0;
  const Integer scale = Integer(1) << 64;
  for (const auto& p : probs) {
    cumulative += p;
    Integer t = numerator(cumulative) * scale / denominator(cumulative);
    out.push_back(t >= scale ? ~std::uint64_t{0} : t.convert_to<std::uint64_t>());
  }
  return out;
}

struct Sampler {
  std::vector<std::uint64_t> cut;

  std::size_t draw(SplitMix64& rng) const {
    const std::uint64_t u = rng();
    for (std::size_t i = 0; i + 1 < cut.size(); ++i)
      if (u < cut[i]) return i;
    return cut.size() - 1;
  }
};

struct Totals {
  unsigned __int128 sum = 0;
  unsigned __int128 sum_sq = 0;
  std::uint64_t uncensored = 0;
  std::uint64_t censored = 0;

  void add(std::uint64_t steps, bool censored_run) {
    if (censored_run) {
      ++censored;
      return;
    }
    ++uncensored;
    sum += steps;
    sum_sq += static_cast<unsigned __int128>(steps) * steps;
  }
  void merge(const Totals& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    uncensored += o.uncensored;
    censored += o.censored;
  }
};

long double to_ld(unsigned __int128 v) {
  return static_cast<long double>(static_cast<std::uint64_t>(v >> 64)) * 18446744073709551616.0L +
         static_cast<long double>(static_cast<std::uint64_t>(v));
}

/// Runs trials [0, trials) split into contiguous blocks, one per thread.
/// `run(trial)` returns (steps, censored).
template <class Run>
Totals run_trials(const SimulationOptions& options, Run&& run, std::vector<std::uint64_t>* times) {
  const unsigned threads = std::max(1u, options.threads);
  std::vector<Totals> partial(threads);
  if (times) times->assign(options.trials, 0);
  auto block = [&](unsigned id) {
    const std::uint64_t begin = options.trials * id / threads;
    const std::uint64_t end = options.trials * (id + 1) / threads;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      auto [steps, censored] = run(trial);
      partial[id].add(steps, censored);
      if (times) (*times)[trial] = steps;
    }
  };
  if (threads == 1) {
    block(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(block, id);
    for (auto& t : pool) t.join();
  }
  Totals total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

SimEstimate summarize(const Totals& t, const SimulationOptions& options) {
  SimEstimate e;
  e.trials = options.trials;
  e.censored = t.censored;
  e.seed = options.seed;
  e.step_cap = options.step_cap;
  if (t.uncensored == 0) return e;
  const long double n = static_cast<long double>(t.uncensored);
  const long double mean = to_ld(t.sum) / n;
  e.mean = static_cast<double>(mean);
  if (t.uncensored > 1) {
    const long double spread = (to_ld(t.sum_sq) - to_ld(t.sum) * mean) / (n - 1);
    e.half_width_95 = static_cast<double>(1.96L * std::sqrt(std::max(spread, 0.0L) / n));
  }
  return e;
}

void check_options(const SimulationOptions& options) {
  if (options.trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (options.step_cap == 0) throw std::invalid_argument("step cap must be at least 1");
}

struct WalkRunner {
  std::vector<std::int64_t> offsets;  // last entry unused when the reset is sampled
  Sampler sampler;
  bool has_reset = false;
  std::int64_t reset_target = 0;

  explicit WalkRunner(const RandomWalkProgram& rw) {
    std::vector<Rational> probs;
    for (std::int64_t j = -static_cast<std::int64_t>(rw.k()); j <= static_cast<std::int64_t>(rw.m()); ++j)
      if (rw.prob(j) > 0) {
        offsets.push_back(j);
        probs.push_back(rw.prob(j));
      }
    if (rw.direct_prob() > 0) {
      has_reset = true;
      reset_target = rw.reset_target();
      probs.push_back(rw.direct_prob());
    }
    sampler.cut = thresholds(probs);
  }

  std::pair<std::uint64_t, bool> run(std::int64_t x, SplitMix64 rng, std::uint64_t cap) const {
    std::uint64_t steps = 0;
    while (x > 0) {
      if (steps == cap) return {steps, true};
      ++steps;
      std::size_t i = sampler.draw(rng);
      if (i < offsets.size()) {
        x += offsets[i];
      } else {
        x = reset_target;
      }
    }
    return {steps, false};
  }
};

struct ProgramRunner {
  const CpProgram& prog;
  std::vector<const IntVector*> moves;  // nullptr stands for the reset
  Sampler sampler;

  explicit ProgramRunner(const CpProgram& p) : prog(p) {
    std::vector<Rational> probs;
    for (const auto& br : prog.branches)
      if (br.prob > 0) {
        moves.push_back(&br.delta);
        probs.push_back(br.prob);
      }
    if (prog.reset) {
      moves.push_back(nullptr);
      probs.push_back(prog.reset->prob);
    }
    sampler.cut = thresholds(probs);
  }

  std::pair<std::uint64_t, bool> run(IntVector x, SplitMix64 rng, std::uint64_t cap) const {
    std::uint64_t steps = 0;
    while (prog.guard_holds(x)) {
      if (steps == cap) return {steps, true};
      ++steps;
      const IntVector* move = moves[sampler.draw(rng)];
      if (move) {
        for (std::size_t v = 0; v < x.size(); ++v) x[v] += (*move)[v];
      } else {
        x = prog.reset->target;
      }
    }
    return {steps, false};
  }
};

IntVector checked_start(const CpProgram& prog, std::span<const std::int64_t> x0) {
  if (x0.size() != prog.arity())
    throw ValidationError("expected " + std::to_string(prog.arity()) + " initial values, got " +
                          std::to_string(x0.size()));
  return IntVector(x0.begin(), x0.end());
}

}  // namespace

SimEstimate simulate(const RandomWalkProgram& rw, std::int64_t x0, const SimulationOptions& options) {
  check_options(options);
  WalkRunner runner(rw);
  auto totals = run_trials(
      options, [&](std::uint64_t trial) { return runner.run(x0, trial_stream(options.seed, trial), options.step_cap); },
      nullptr);
  return summarize(totals, options);
}

SimEstimate simulate(const CpProgram& prog, std::span<const std::int64_t> x0, const SimulationOptions& options) {
  check_options(options);
  IntVector start = checked_start(prog, x0);
  ProgramRunner runner(prog);
  auto totals = run_trials(
      options,
      [&](std::uint64_t trial) { return runner.run(start, trial_stream(options.seed, trial), options.step_cap); },
      nullptr);
  return summarize(totals, options);
}

std::vector<std::uint64_t> termination_times(const RandomWalkProgram& rw, std::int64_t x0,
                                             const SimulationOptions& options) {
  check_options(options);
  WalkRunner runner(rw);
  std::vector<std::uint64_t> times;
  run_trials(
      options, [&](std::uint64_t trial) { return runner.run(x0, trial_stream(options.seed, trial), options.step_cap); },
      &times);
  return times;
}

std::vector<std::uint64_t> termination_times(const CpProgram& prog, std::span<const std::int64_t> x0,
                                             const SimulationOptions& options) {
  check_options(options);
  IntVector start = checked_start(prog, x0);
  ProgramRunner runner(prog);
  std::vector<std::uint64_t> times;
  run_trials(
      options,
      [&](std::uint64_t trial) { return runner.run(start, trial_stream(options.seed, trial), options.step_cap); },
      &times);
  return times;
}

}  // namespace cprt

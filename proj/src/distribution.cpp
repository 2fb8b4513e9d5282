#include "cprt/distribution.hpp"

#include <cmath>
#include <map>

#include <boost/math/special_functions/gamma.hpp>

#include "cprt/reduction.hpp"
#include "cprt/simulate.hpp"

namespace cprt {
namespace {

struct Cell {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
};

std::uint64_t second_seed(std::uint64_t seed) {
  return SplitMix64::mix(seed ^ 0xd1b54a32d192ed03ULL);
}

}  // namespace

HistogramTest chi_squared_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                     std::uint64_t step_cap, double alpha, std::uint64_t min_bin_count) {
  HistogramTest out;
  out.alpha = alpha;
  out.trials_a = a.size();
  out.trials_b = b.size();
  if (a.empty() || b.empty()) throw std::invalid_argument("both samples must be nonempty");

  std::map<std::uint64_t, Cell> counts;
  Cell censored;
  for (auto t : a) (t >= step_cap ? censored : counts[t]).a++;
  for (auto t : b) (t >= step_cap ? censored : counts[t]).b++;

  std::vector<Cell> bins;
  Cell open;
  for (const auto& [time, cell] : counts) {
    open.a += cell.a;
    open.b += cell.b;
    if (open.a + open.b >= min_bin_count) {
      bins.push_back(open);
      open = {};
    }
  }
  if (open.a + open.b > 0) {
    if (bins.empty()) {
      bins.push_back(open);
    } else {
      bins.back().a += open.a;
      bins.back().b += open.b;
    }
  }
  if (censored.a + censored.b > 0) bins.push_back(censored);

  out.bins = static_cast<unsigned>(bins.size());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double ka = std::sqrt(nb / na), kb = std::sqrt(na / nb);
  for (const auto& c : bins) {
    const double diff = ka * static_cast<double>(c.a) - kb * static_cast<double>(c.b);
    out.statistic += diff * diff / static_cast<double>(c.a + c.b);
  }
  out.degrees_of_freedom = out.bins > 0 ? out.bins - 1 : 0;
  out.p_value = out.degrees_of_freedom == 0
                    ? 1.0
                    : boost::math::gamma_q(out.degrees_of_freedom / 2.0, out.statistic / 2.0);
  out.passed = out.p_value >= alpha;
  return out;
}

HistogramTest compare_programs(const CpProgram& a, std::span<const std::int64_t> x0_a, const CpProgram& b,
                               std::span<const std::int64_t> x0_b, const DistributionMatchOptions& options) {
  SimulationOptions sa{options.trials, options.step_cap, options.seed, options.threads};
  SimulationOptions sb{options.trials, options.step_cap, second_seed(options.seed), options.threads};
  auto times_a = termination_times(a, x0_a, sa);
  auto times_b = termination_times(b, x0_b, sb);
  return chi_squared_two_sample(times_a, times_b, options.step_cap, options.alpha);
}

HistogramTest distribution_match(const CpProgram& prog, std::span<const std::int64_t> x0,
                                 const DistributionMatchOptions& options) {
  Reduction red = to_random_walk(prog);
  SimulationOptions sa{options.trials, options.step_cap, options.seed, options.threads};
  SimulationOptions sb{options.trials, options.step_cap, second_seed(options.seed), options.threads};
  auto times_a = termination_times(prog, x0, sa);
  auto times_b = termination_times(red.walk, red.rdw.apply(x0), sb);
  return chi_squared_two_sample(times_a, times_b, options.step_cap, options.alpha);
}

}  // namespace cprt

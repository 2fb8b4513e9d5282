#include <doctest.h>

#include <map>

#include "cprt/analysis.hpp"
#include "cprt/distribution.hpp"
#include "cprt/errors.hpp"
#include "cprt/kleene.hpp"
#include "cprt/simulate.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace cprt;
using namespace cprt::test;

namespace {

std::map<long, long double> offsets(const RandomWalkProgram& rw) {
  std::map<long, long double> out;
  for (long j = -static_cast<long>(rw.k()); j <= static_cast<long>(rw.m()); ++j)
    if (rw.prob(j) > 0) out[j] = rw.prob(j).convert_to<long double>();
  return out;
}

}  // namespace

TEST_CASE("Kleene iteration is exact for small windows") {
  RandomWalkProgram rw = load_walk("mod_race");
  KleeneResult r1 = kleene_iterate(rw, 1, 1);
  CHECK(r1.exact);
  CHECK(*r1.exact_value == 1);
  KleeneResult r2 = kleene_iterate(rw, 1, 2);
  CHECK(*r2.exact_value == 1 + Rational(7, 11));
  CHECK(kleene_iterate(rw, 0, 10).value == 0);
  CHECK(kleene_iterate(rw, -4, 10).value == 0);
  CHECK(kleene_iterate(rw, 3, 0).value == 0);
  KleeneResult dec = kleene_iterate(load_walk("decrement"), 7, 100);
  CHECK(*dec.exact_value == 7);
}

TEST_CASE("Kleene iterates increase towards the closed form") {
  RandomWalkProgram rw = load_walk("mod_race");
  Real previous = 0;
  for (std::uint64_t n : {1u, 2u, 5u, 20u, 100u, 200u, 1000u}) {
    KleeneResult r = kleene_iterate(rw, 1, n);
    CHECK(r.value >= previous);
    CHECK(r.value <= 11);
    previous = r.value;
  }
  // at n = 200 the truncated runtime is still about 0.66 below the limit
  CHECK(abs(kleene_iterate(rw, 1, 200).value - Real(10.344)) < Real(0.001));
  KleeneResult converged = kleene_until(rw, 1, power_of_ten(-12), 100000);
  CHECK(abs(converged.value - 11) < power_of_ten(-6));
  CHECK(converged.last_increment < power_of_ten(-12));
}

TEST_CASE("forward iteration matches the backward table and a long double reference") {
  for (const char* name : {"mod_race", "race_rdw", "direct_nonconstant", "complex_roots", "symmetric"}) {
    CAPTURE(name);
    RandomWalkProgram rw = load_walk(name);
    const std::uint64_t n = 60;
    KleeneTable table = kleene_table(rw, -3, 30, n);
    for (std::int64_t x0 : {-1, 0, 1, 2, 7, 30}) {
      KleeneResult forward = kleene_iterate(rw, x0, n);
      CHECK(abs(forward.value - table.at(x0)) < power_of_ten(-30));
      if (rw.direct_prob() == 0) {
        auto [ref, last] = reference_kleene(offsets(rw), x0, static_cast<long>(n));
        CHECK(abs(forward.value - Real(ref)) < Real(1e-12));
        CHECK(abs(forward.last_increment - Real(last)) < Real(1e-12));
      }
    }
  }
}

TEST_CASE("Kleene iteration bounds the closed form from below") {
  for (const char* name : kPastFixtures) {
    CAPTURE(name);
    AnalysisReport r = analyze_cp(load_program(name));
    for (std::int64_t x0 : {1, 5, 25}) {
      KleeneResult k = kleene_iterate(r.reduction.walk, x0, 300);
      CHECK(k.value <= expected_runtime_at_rdw(r, x0) + power_of_ten(-30));
    }
  }
}

TEST_CASE("SplitMix64 reference values") {
  SplitMix64 g(1234567);
  CHECK(g() == 6457827717110365317ULL);
  CHECK(g() == 3203168211198807973ULL);
  CHECK(g() == 9817491932198370423ULL);
}

TEST_CASE("simulation is deterministic and independent of the thread count") {
  CpProgram race = load_program("race");
  std::vector<std::int64_t> x0{5, 0};
  SimulationOptions opts{.trials = 20000, .step_cap = 100000, .seed = 99, .threads = 1};
  SimEstimate a = simulate(race, x0, opts);
  SimEstimate b = simulate(race, x0, opts);
  opts.threads = 4;
  SimEstimate c = simulate(race, x0, opts);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(termination_times(race, x0, opts) == termination_times(race, x0, {.trials = 20000, .step_cap = 100000, .seed = 99}));
  opts.seed = 100;
  CHECK_FALSE(simulate(race, x0, opts) == a);
}

TEST_CASE("simulation estimates") {
  SimulationOptions opts{.trials = 200000, .step_cap = 1000000, .seed = 7};
  SUBCASE("guard violated initially") {
    std::vector<std::int64_t> x0{-3};
    SimEstimate e = simulate(load_program("mod_race"), x0, opts);
    CHECK(e.mean == 0);
    CHECK(e.half_width_95 == 0);
  }
  SUBCASE("negative binomial") {
    SimEstimate e = simulate(load_walk("negative_binomial"), 7, opts);
    CHECK(std::abs(e.mean - 14) < 4 * e.half_width_95);
    CHECK(e.censored == 0);
  }
  SUBCASE("direct termination") {
    std::vector<std::int64_t> x0{5, 1};
    SimEstimate e = simulate(load_program("direct"), x0, opts);
    CHECK(std::abs(e.mean - 10) < 4 * e.half_width_95);
  }
  SUBCASE("deterministic decrement") {
    SimEstimate e = simulate(load_walk("decrement"), 9, {.trials = 100, .seed = 1});
    CHECK(e.mean == 9);
    CHECK(e.half_width_95 == 0);
  }
  SUBCASE("censoring") {
    SimEstimate e = simulate(load_walk("race_not_ast"), 5, {.trials = 1000, .step_cap = 200, .seed = 3});
    CHECK(e.censored > 0);
    CHECK(e.trials == 1000);
    auto times = termination_times(load_walk("race_not_ast"), 5, {.trials = 1000, .step_cap = 200, .seed = 3});
    CHECK(static_cast<std::uint64_t>(std::count(times.begin(), times.end(), 200u)) == e.censored);
  }
}

TEST_CASE("chi-squared two-sample test") {
  std::vector<std::uint64_t> same(1000, 4);
  HistogramTest t = chi_squared_two_sample(same, same, 100);
  CHECK(t.p_value == doctest::Approx(1.0));
  CHECK(t.passed);
  std::vector<std::uint64_t> a, b;
  for (int i = 0; i < 1000; ++i) {
    a.push_back(1 + i % 5);
    b.push_back(3 + i % 5);
  }
  CHECK_FALSE(chi_squared_two_sample(a, b, 100).passed);
}

TEST_CASE("a program and its random walk terminate alike") {
  DistributionMatchOptions opts{.trials = 20000, .seed = 11};
  std::vector<std::int64_t> race_x0{11, 1};
  CHECK(distribution_match(load_program("race"), race_x0, opts).passed);
  std::vector<std::int64_t> direct_x0{4, 2};
  CHECK(distribution_match(load_program("direct"), direct_x0, opts).passed);
  CpProgram perturbed = load_program("race_rdw");
  perturbed.branches[0].prob = Rational(49, 110);
  perturbed.branches[1].prob = Rational(8, 55);
  std::vector<std::int64_t> x0{11};
  CHECK_FALSE(compare_programs(load_program("race"), race_x0, perturbed, x0, opts).passed);
}

TEST_CASE("the Kleene state window is bounded") {
  RandomWalkProgram rw = load_walk("mod_race");
  CHECK_THROWS_AS(kleene_iterate(rw, 1, 1000, {.window_limit = 50}), ResourceError);
  CHECK_NOTHROW(kleene_iterate(rw, 1, 40, {.window_limit = 50}));
  CHECK_NOTHROW(kleene_until(rw, 1, Real(0.5), 100000000));
}

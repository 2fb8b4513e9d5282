#include <doctest.h>

#include <random>

#include "cprt/errors.hpp"
#include "cprt/termination.hpp"
#include "support.hpp"

using namespace cprt;
using namespace cprt::test;

TEST_CASE("race reduces to the nine-step random walk") {
  Reduction r = to_random_walk(load_program("race"));
  CHECK(r.walk.m() == 1);
  CHECK(r.walk.k() == 9);
  CHECK(r.walk.prob(1) == Rational(6, 11));
  for (int j = -9; j <= 0; ++j) CHECK(r.walk.prob(j) == Rational(1, 22));
  CHECK(r.walk.direct_prob() == 0);
  CHECK(r.rdw.apply(IntVector{1000, 0}) == 1001);
  CHECK(r.walk == load_walk("race_rdw"));
}

TEST_CASE("a random walk program reduces to itself") {
  for (const char* name : {"mod_race", "complex_roots", "symmetric", "direct_rdw"}) {
    CpProgram p = load_program(name);
    Reduction r = to_random_walk(p);
    CHECK(r.rdw.guard_a == IntVector{1});
    CHECK(r.rdw.guard_b == 0);
    CHECK(to_cp_program(r.walk) == p);
    REQUIRE(as_random_walk(p).has_value());
  }
  CHECK_FALSE(as_random_walk(load_program("race")).has_value());
}

TEST_CASE("direct termination variant") {
  Reduction r = to_random_walk(load_program("direct"));
  CHECK(r.walk.m() == 1);
  CHECK(r.walk.k() == 0);
  CHECK(r.walk.prob(1) == Rational(9, 10));
  CHECK(r.walk.direct_prob() == Rational(1, 10));
  CHECK(r.walk.reset_target() == 0);
}

TEST_CASE("zero-probability offsets inside the range are kept") {
  RandomWalkProgram rw = load_walk("race_ast");
  CHECK(rw.k() == 4);
  CHECK(rw.prob(-1) == 0);
  CHECK(rw.prob(-3) == 0);
  CpProgram p = parse_program("vars x\nwhile x > 0 { inc (5) [0]; inc (-1) [1]; }");
  CHECK(to_random_walk(p).walk.m() == 0);
}

TEST_CASE("triviality") {
  CHECK(is_trivial(parse_program("vars x\nwhile 0*x > -1 { inc (1) [1]; }")));
  CHECK(is_trivial(load_program("trivial")));
  CHECK_FALSE(is_trivial(load_program("race")));
  CpProgram orth = parse_program("vars x, y\nwhile x > 0 { inc (0, 1) [1/2]; inc (0, -1) [1/2]; }");
  CHECK(is_trivial(orth));
  Verdict never = decide(parse_program("vars x\nwhile 0*x > -1 { inc (1) [1]; }"));
  CHECK(never.kind == VerdictKind::Trivial);
  CHECK(never.trivial == TrivialBehaviour::NeverTerminates);
  Verdict zero = decide(parse_program("vars x\nwhile 0*x > 2 { inc (1) [1]; }"));
  CHECK(zero.trivial == TrivialBehaviour::ZeroRuntime);
  CHECK(decide(load_program("trivial")).trivial == TrivialBehaviour::DivergesWhenGuardHolds);
}

TEST_CASE("offset consistency and mass conservation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> coord(-100000, 100000);
  for (const char* name : {"race", "direct", "mod_race"}) {
    CpProgram p = load_program(name);
    Reduction r = to_random_walk(p);
    Rational total = r.walk.direct_prob();
    for (auto q : r.walk.probs()) total += q;
    CHECK(total == 1);
    for (int trial = 0; trial < 200; ++trial) {
      IntVector z(p.arity());
      for (auto& v : z) v = coord(rng);
      for (const auto& br : p.branches) {
        IntVector moved = z;
        for (std::size_t i = 0; i < z.size(); ++i) moved[i] += br.delta[i];
        CHECK(r.rdw.apply(moved) - r.rdw.apply(z) == dot(p.guard_a, br.delta));
      }
    }
  }
}

TEST_CASE("drift") {
  CHECK(drift(load_walk("race_rdw")) == Rational(-3, 2));
  CHECK(drift(load_walk("mod_race")) == Rational(-3, 22));
  CHECK(drift(load_walk("symmetric")) == 0);
  CHECK(drift(load_walk("race_not_ast")) == Rational(1, 11));
  CHECK(drift(load_walk("race_ast")) == 0);
}

TEST_CASE("decision procedure") {
  Verdict race = decide(load_program("race"));
  CHECK(race.kind == VerdictKind::Past);
  CHECK(race.drift == Rational(-3, 2));
  CHECK(race.reason == VerdictReason::DriftSign);
  CHECK(decide(load_program("race_not_ast")).kind == VerdictKind::NotAst);
  CHECK(decide(load_program("race_ast")).kind == VerdictKind::AstNotPast);
  CHECK(decide(load_program("symmetric")).kind == VerdictKind::AstNotPast);
  Verdict direct = decide(load_program("direct"));
  CHECK(direct.kind == VerdictKind::Past);
  CHECK(direct.reason == VerdictReason::DirectTermination);
  CHECK_FALSE(direct.drift.has_value());
  // p' > 0 decides PAST even with positive drift
  CHECK(drift(load_walk("direct")) == Rational(9, 10));
  for (const char* name : {"race", "direct", "race_ast", "race_not_ast", "mod_race", "trivial"}) {
    CpProgram p = load_program(name);
    CHECK(decide(p) == decide(to_random_walk(p).walk));
  }
}

TEST_CASE("linear runtime bounds") {
  RuntimeBounds race = bounds(load_program("race"));
  CHECK(race.lower_slope == Rational(2, 3));
  CHECK(race.lower_intercept == 0);
  CHECK(race.upper_slope == Rational(2, 3));
  CHECK(race.upper_intercept == Rational(16, 3));
  CHECK(race.lower(0) == 0);
  CHECK(race.upper(-4) == 0);

  RuntimeBounds direct = bounds(load_program("direct"));
  CHECK(direct.lower(5) == 0);
  CHECK(direct.upper(5) == 10);

  RuntimeBounds nb = bounds(load_program("negative_binomial"));
  CHECK(nb.lower_slope == 2);
  CHECK(nb.upper_slope == 2);
  CHECK(nb.lower_intercept == 0);
  CHECK(nb.upper_intercept == 0);

  RuntimeBounds irr = bounds(load_program("irrational"));
  CHECK(irr.upper(7) == 16);
  CHECK(bounds(load_program("ngo")).upper(3) == 6);

  CHECK_THROWS_AS(bounds(load_program("symmetric")), NotPastError);
  CHECK_THROWS_AS(bounds(load_program("race_not_ast")), NotPastError);
  CHECK_THROWS_AS(bounds(load_program("trivial")), NotPastError);
}

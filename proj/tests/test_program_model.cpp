#include <doctest.h>

#include <random>

#include "cprt/errors.hpp"
#include "cprt/parser.hpp"
#include "support.hpp"

using namespace cprt;
using namespace cprt::test;

TEST_CASE("race source parses to the two-variable program") {
  CpProgram p = load_program("race");
  CHECK(p.var_names == std::vector<std::string>{"t", "h"});
  CHECK(p.guard_a == IntVector{1, -1});
  CHECK(p.guard_b == -1);
  REQUIRE(p.branches.size() == 11);
  CHECK(p.branches[0] == Branch{{1, 0}, Rational(6, 11)});
  for (int j = 1; j <= 10; ++j) CHECK(p.branches[static_cast<std::size_t>(j)] == Branch{{1, j}, Rational(1, 22)});
  CHECK_FALSE(p.reset.has_value());
}

TEST_CASE("guard-derived variables and += spelling") {
  CpProgram p = parse_program("while (1*x > 0) { x += (1) [1/2]; x += (-1) [1/2]; }");
  CHECK(p.arity() == 1);
  CHECK(p.var_names[0] == "x");
  CHECK(p.branches.size() == 2);
  CHECK(p.branches[1] == Branch{{-1}, Rational(1, 2)});
  CHECK(has_random_walk_form(p));
}

TEST_CASE(">= is rewritten to > b-1") {
  CpProgram p = parse_program("vars x\nwhile x >= 3 { inc (-1) [1]; }");
  CHECK(p.guard_b == 2);
  CpProgram q = parse_program("vars t, h\nwhile t - h + 1 > 0 { inc (1, 0) [1]; }");
  CHECK(q.guard_a == IntVector{1, -1});
  CHECK(q.guard_b == -1);
}

TEST_CASE("probabilities that do not sum to one are rejected") {
  CHECK_THROWS_AS(load_program("bad_probs"), ValidationError);
  try {
    load_program("bad_probs");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("21/22") != std::string::npos);
  }
}

TEST_CASE("structural invariants") {
  SUBCASE("reset target must violate the guard") {
    CHECK_NOTHROW(parse_program("vars x\nwhile x > 0 { inc (1) [1/2]; reset (0) [1/2]; }"));
    CHECK_THROWS_AS(parse_program("vars x\nwhile x > 0 { inc (1) [1/2]; reset (1) [1/2]; }"), ValidationError);
  }
  SUBCASE("duplicate deltas") {
    CHECK_THROWS_AS(parse_program("vars x\nwhile x > 0 { inc (1) [1/2]; inc (1) [1/2]; }"), ValidationError);
  }
  SUBCASE("arity mismatch") {
    CHECK_THROWS_AS(parse_program("vars x, y\nwhile x > 0 { inc (1) [1]; }"), ValidationError);
  }
  SUBCASE("reset probability must be positive") {
    CHECK_THROWS_AS(parse_program("vars x\nwhile x > 0 { inc (1) [1]; reset (0) [0]; }"), ValidationError);
  }
  SUBCASE("at most one reset") {
    CHECK_THROWS(parse_program("vars x\nwhile x > 0 { reset (0) [1/2]; reset (-1) [1/2]; }"));
  }
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_program("vars x\nwhile x > 0 {\n  inc (1) 1/2;\n}");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 11);
  }
  CHECK_THROWS_AS(parse_program("vars x\nwhile x > 0 { inc (1) [1/0]; }"), SyntaxError);
  CHECK_THROWS_AS(parse_program("vars x\nwhile x > 0 { inc (1) [1] }"), SyntaxError);
  CHECK_THROWS_AS(parse_program(""), SyntaxError);
}

TEST_CASE("printing and parsing are inverse on every fixture") {
  for (const char* name : {"race", "race_rdw", "mod_race", "direct", "direct_rdw", "direct_nonconstant", "complex_roots",
                           "multiplicity", "negative_binomial", "symmetric", "irrational", "ngo", "race_ast",
                           "race_not_ast", "trivial", "decrement"}) {
    CAPTURE(name);
    CpProgram p = load_program(name);
    CHECK(parse_program(to_source(p)) == p);
    CHECK(to_source(parse_program(to_source(p))) == to_source(p));
  }
}

TEST_CASE("perturbing any probability by 1/1000 is rejected") {
  for (const char* name : {"race", "mod_race", "direct", "direct_nonconstant", "complex_roots", "multiplicity",
                           "negative_binomial", "symmetric", "irrational", "ngo"}) {
    CAPTURE(name);
    CpProgram p = load_program(name);
    CHECK_NOTHROW(validate(p));
    for (std::size_t i = 0; i < p.branches.size(); ++i) {
      CpProgram q = p;
      q.branches[i].prob += Rational(1, 1000);
      CHECK_THROWS_AS(validate(q), ValidationError);
    }
    if (p.reset) {
      CpProgram q = p;
      q.reset->prob += Rational(1, 1000);
      CHECK_THROWS_AS(validate(q), ValidationError);
    }
  }
}

TEST_CASE("rational arithmetic round-trips exactly") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long long> num(-1000000007LL, 1000000007LL), den(1, 1000000007LL);
  for (int i = 0; i < 2000; ++i) {
    Rational p(num(rng), den(rng)), q(num(rng), den(rng));
    CHECK((p + q) - q == p);
    if (q != 0) CHECK((p * q) / q == p);
    CHECK(parse_rational(to_string(p)) == p);
  }
}

TEST_CASE("random walk program invariants") {
  CHECK_NOTHROW(RandomWalkProgram(1, 1, {Rational(1, 2), 0, Rational(1, 2)}, 0));
  CHECK_THROWS_AS(RandomWalkProgram(1, 1, {Rational(1, 2), Rational(1, 2), 0}, 0), ValidationError);
  CHECK_THROWS_AS(RandomWalkProgram(1, 1, {0, Rational(1, 2), Rational(1, 2)}, 0), ValidationError);
  CHECK_THROWS_AS(RandomWalkProgram(0, 1, {Rational(1, 2), Rational(1, 4)}, 0), ValidationError);
  CHECK_THROWS_AS(RandomWalkProgram(0, 1, {Rational(1, 2), 0}, Rational(1, 2), 1), ValidationError);
  RandomWalkProgram rw(1, 2, {Rational(7, 22), Rational(1, 22), Rational(1, 11), Rational(6, 11)}, 0);
  CHECK(rw.prob(-2) == Rational(7, 22));
  CHECK(rw.prob(1) == Rational(6, 11));
  CHECK(rw.prob(5) == 0);
  CHECK(to_random_walk(to_cp_program(rw)).walk == rw);
}

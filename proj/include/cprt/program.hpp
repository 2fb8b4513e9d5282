#pragma once

// Data model for constant-probability loop programs
//
//   while (a . x > b) {  x = x + c_1 [p_1]; ... x = x + c_n [p_n]; x = d [p'];  }
//
// and for their univariate normal form, the random walk program
//
//   while (x > 0) {  x = x + j [p_j] for -k <= j <= m;  x = d [p'];  }

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cprt/numeric.hpp"

namespace cprt {

using IntVector = std::vector<std::int64_t>;

struct Branch {
  IntVector delta;
  Rational prob;

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// Direct assignment `x = target`; always leaves the loop.
struct Reset {
  IntVector target;
  Rational prob;

  friend bool operator==(const Reset&, const Reset&) = default;
};

struct CpProgram {
  std::vector<std::string> var_names;
  IntVector guard_a;
  std::int64_t guard_b = 0;
  std::vector<Branch> branches;  // file order, semantically unordered
  std::optional<Reset> reset;

  std::size_t arity() const { return var_names.size(); }

  /// p', zero when there is no reset.
  Rational direct_prob() const { return reset ? reset->prob : Rational(0); }

  bool guard_holds(std::span<const std::int64_t> x) const;

  friend bool operator==(const CpProgram&, const CpProgram&) = default;
};

/// Throws ValidationError naming the first violated invariant.
void validate(const CpProgram& prog);

/// Exact integer dot product; throws ValidationError on overflow or arity mismatch.
std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// Random walk program. Validated at construction and immutable afterwards.
class RandomWalkProgram {
 public:
  /// `probs[j + k]` holds p_j for j in [-k, m].
  RandomWalkProgram(unsigned m, unsigned k, std::vector<Rational> probs, Rational direct_prob,
                    std::int64_t reset_target = 0);

  unsigned m() const { return m_; }
  unsigned k() const { return k_; }

  /// p_j; zero outside [-k, m].
  Rational prob(std::int64_t j) const;
  std::span<const Rational> probs() const { return probs_; }
  const Rational& direct_prob() const { return direct_prob_; }
  std::int64_t reset_target() const { return reset_target_; }

  friend bool operator==(const RandomWalkProgram&, const RandomWalkProgram&) = default;

 private:
  unsigned m_;
  unsigned k_;
  std::vector<Rational> probs_;
  Rational direct_prob_;
  std::int64_t reset_target_;
};

/// The univariate `while (1*x > 0)` program with one branch per positive p_j.
CpProgram to_cp_program(const RandomWalkProgram& rw, std::string var = "x");

/// True for a single variable, guard coefficient 1, bound 0 and d <= 0.
bool has_random_walk_form(const CpProgram& prog);

}  // namespace cprt

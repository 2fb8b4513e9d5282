#pragma once

#include <optional>
#include <string_view>

#include "cprt/program.hpp"
#include "cprt/reduction.hpp"

namespace cprt {

enum class VerdictKind { Trivial, NotAst, AstNotPast, Past };
enum class VerdictReason { DirectTermination, DriftSign, Triviality };

/// How a trivial program behaves on its inputs.
enum class TrivialBehaviour {
  NeverTerminates,        // a = 0, b < 0: the guard holds everywhere
  ZeroRuntime,            // a = 0, b >= 0: the guard never holds
  DivergesWhenGuardHolds  // reduced program is `x = x [1]`
};

struct Verdict {
  VerdictKind kind;
  std::optional<Rational> drift;  // absent for trivial programs and the p' > 0 fast path
  VerdictReason reason;
  std::optional<TrivialBehaviour> trivial;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

std::string_view to_string(VerdictKind kind);
std::string_view to_string(VerdictReason reason);
std::string_view to_string(TrivialBehaviour behaviour);

/// Expected one-step change sum_j j * p_j.
Rational drift(const RandomWalkProgram& rw);

Verdict decide(const CpProgram& prog);
Verdict decide(const RandomWalkProgram& rw);

/// Affine envelope slope * rdw(x) + intercept, valid for rdw(x) > 0.
struct RuntimeBounds {
  Rational lower_slope;
  Rational lower_intercept;
  Rational upper_slope;
  Rational upper_intercept;

  /// Both bounds are 0 when rdw(x) <= 0.
  Rational lower(std::int64_t rdw_value) const;
  Rational upper(std::int64_t rdw_value) const;

  friend bool operator==(const RuntimeBounds&, const RuntimeBounds&) = default;
};

/// Throws NotPastError unless the program is PAST.
RuntimeBounds bounds(const CpProgram& prog);
RuntimeBounds bounds(const RandomWalkProgram& rw);

}  // namespace cprt

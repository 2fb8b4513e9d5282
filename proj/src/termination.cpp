#include "cprt/termination.hpp"

#include <algorithm>

#include "cprt/errors.hpp"

namespace cprt {

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Trivial: return "Trivial";
    case VerdictKind::NotAst: return "NotAST";
    case VerdictKind::AstNotPast: return "AstNotPast";
    case VerdictKind::Past: return "Past";
  }
  return "?";
}

std::string_view to_string(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::DirectTermination: return "DirectTermination";
    case VerdictReason::DriftSign: return "DriftSign";
    case VerdictReason::Triviality: return "Triviality";
  }
  return "?";
}

std::string_view to_string(TrivialBehaviour behaviour) {
  switch (behaviour) {
    case TrivialBehaviour::NeverTerminates: return "NeverTerminates";
    case TrivialBehaviour::ZeroRuntime: return "ZeroRuntime";
    case TrivialBehaviour::DivergesWhenGuardHolds: return "DivergesWhenGuardHolds";
  }
  return "?";
}

Rational drift(const RandomWalkProgram& rw) {
  Rational mu = 0;
  for (std::int64_t j = -static_cast<std::int64_t>(rw.k()); j <= static_cast<std::int64_t>(rw.m()); ++j)
    mu += Rational(j) * rw.prob(j);
  return mu;
}

Verdict decide(const RandomWalkProgram& rw) {
  if (is_trivial(rw))
    return {VerdictKind::Trivial, std::nullopt, VerdictReason::Triviality, TrivialBehaviour::DivergesWhenGuardHolds};
  if (rw.direct_prob() > 0) return {VerdictKind::Past, std::nullopt, VerdictReason::DirectTermination, std::nullopt};
  Rational mu = drift(rw);
  VerdictKind kind = mu > 0 ? VerdictKind::NotAst : mu == 0 ? VerdictKind::AstNotPast : VerdictKind::Past;
  return {kind, mu, VerdictReason::DriftSign, std::nullopt};
}

Verdict decide(const CpProgram& prog) {
  if (std::all_of(prog.guard_a.begin(), prog.guard_a.end(), [](std::int64_t a) { return a == 0; })) {
    auto behaviour = prog.guard_b < 0 ? TrivialBehaviour::NeverTerminates : TrivialBehaviour::ZeroRuntime;
    return {VerdictKind::Trivial, std::nullopt, VerdictReason::Triviality, behaviour};
  }
  return decide(to_random_walk(prog).walk);
}

Rational RuntimeBounds::lower(std::int64_t rdw_value) const {
  return rdw_value <= 0 ? Rational(0) : lower_slope * rdw_value + lower_intercept;
}

Rational RuntimeBounds::upper(std::int64_t rdw_value) const {
  return rdw_value <= 0 ? Rational(0) : upper_slope * rdw_value + upper_intercept;
}

RuntimeBounds bounds(const RandomWalkProgram& rw) {
  Verdict v = decide(rw);
  if (v.kind != VerdictKind::Past)
    throw NotPastError(std::string("runtime bounds need a PAST program, verdict is ") +
                       std::string(to_string(v.kind)));
  if (rw.direct_prob() > 0) return {0, 0, 0, 1 / rw.direct_prob()};
  const Rational& mu = *v.drift;
  Rational slope = -1 / mu;
  return {slope, 0, slope, Rational(1 - static_cast<std::int64_t>(rw.k())) / mu};
}

RuntimeBounds bounds(const CpProgram& prog) {
  Verdict v = decide(prog);
  if (v.kind != VerdictKind::Past)
    throw NotPastError(std::string("runtime bounds need a PAST program, verdict is ") +
                       std::string(to_string(v.kind)));
  return bounds(to_random_walk(prog).walk);
}

}  // namespace cprt

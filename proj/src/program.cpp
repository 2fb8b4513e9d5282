#include "cprt/program.hpp"

#include <set>

#include "cprt/errors.hpp"

namespace cprt {

namespace {
std::string show(std::span<const std::int64_t> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}
}  // namespace

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size())
    throw ValidationError("vector arity " + std::to_string(b.size()) + " does not match " +
                          std::to_string(a.size()));
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t term = 0;
    if (__builtin_mul_overflow(a[i], b[i], &term) || __builtin_add_overflow(sum, term, &sum))
      throw ValidationError("integer overflow in scalar product");
  }
  return sum;
}

bool CpProgram::guard_holds(std::span<const std::int64_t> x) const { return dot(guard_a, x) > guard_b; }

void validate(const CpProgram& prog) {
  const std::size_t r = prog.arity();
  if (r == 0) throw ValidationError("program declares no variables");
  std::set<std::string> names(prog.var_names.begin(), prog.var_names.end());
  if (names.size() != r) throw ValidationError("duplicate variable name");
  if (prog.guard_a.size() != r)
    throw ValidationError("guard has " + std::to_string(prog.guard_a.size()) + " coefficients for " +
                          std::to_string(r) + " variables");

  Rational total = 0;
  std::set<IntVector> deltas;
  for (const auto& br : prog.branches) {
    if (br.delta.size() != r)
      throw ValidationError("increment " + show(br.delta) + " has arity " + std::to_string(br.delta.size()) +
                            ", expected " + std::to_string(r));
    if (br.prob < 0) throw ValidationError("negative probability for increment " + show(br.delta));
    if (!deltas.insert(br.delta).second)
      throw ValidationError("duplicate increment " + show(br.delta) + "; increments must be pairwise distinct");
    total += br.prob;
  }
  if (prog.reset) {
    const auto& rs = *prog.reset;
    if (rs.target.size() != r)
      throw ValidationError("reset target " + show(rs.target) + " has arity " + std::to_string(rs.target.size()) +
                            ", expected " + std::to_string(r));
    if (rs.prob <= 0) throw ValidationError("reset probability must be positive");
    std::int64_t ad = dot(prog.guard_a, rs.target);
    if (ad > prog.guard_b)
      throw ValidationError("reset target " + show(rs.target) + " satisfies the loop guard (a.d = " +
                            std::to_string(ad) + " > " + std::to_string(prog.guard_b) + ")");
    total += rs.prob;
  }
  if (total != 1)
    throw ValidationError("probabilities sum to " + to_string(total) + ", expected 1");
}

RandomWalkProgram::RandomWalkProgram(unsigned m, unsigned k, std::vector<Rational> probs, Rational direct_prob,
                                     std::int64_t reset_target)
    : m_(m), k_(k), probs_(std::move(probs)), direct_prob_(std::move(direct_prob)), reset_target_(reset_target) {
  if (probs_.size() != std::size_t{m_} + k_ + 1)
    throw ValidationError("random walk needs " + std::to_string(m_ + k_ + 1) + " probabilities, got " +
                          std::to_string(probs_.size()));
  Rational total = direct_prob_;
  for (const auto& p : probs_) {
    if (p < 0) throw ValidationError("negative probability in random walk");
    total += p;
  }
  if (direct_prob_ < 0) throw ValidationError("negative direct termination probability");
  if (total != 1) throw ValidationError("probabilities sum to " + to_string(total) + ", expected 1");
  if (m_ > 0 && probs_.back() == 0) throw ValidationError("p_m must be positive when m > 0");
  if (k_ > 0 && probs_.front() == 0) throw ValidationError("p_-k must be positive when k > 0");
  if (reset_target_ > 0) throw ValidationError("reset target must be <= 0");
}

Rational RandomWalkProgram::prob(std::int64_t j) const {
  if (j < -static_cast<std::int64_t>(k_) || j > static_cast<std::int64_t>(m_)) return 0;
  return probs_[static_cast<std::size_t>(j + k_)];
}

CpProgram to_cp_program(const RandomWalkProgram& rw, std::string var) {
  CpProgram prog;
  prog.var_names = {std::move(var)};
  prog.guard_a = {1};
  prog.guard_b = 0;
  for (std::int64_t j = rw.m(); j >= -static_cast<std::int64_t>(rw.k()); --j)
    if (rw.prob(j) > 0) prog.branches.push_back({{j}, rw.prob(j)});
  if (rw.direct_prob() > 0) prog.reset = Reset{{rw.reset_target()}, rw.direct_prob()};
  return prog;
}

bool has_random_walk_form(const CpProgram& prog) {
  return prog.arity() == 1 && prog.guard_a == IntVector{1} && prog.guard_b == 0 &&
         (!prog.reset || prog.reset->target[0] <= 0);
}

}  // namespace cprt

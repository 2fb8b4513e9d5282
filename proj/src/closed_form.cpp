#include "cprt/closed_form.hpp"

#include "cprt/termination.hpp"

namespace cprt {

Particular particular_solution(const RandomWalkProgram& rw) {
  Verdict v = decide(rw);
  if (v.kind != VerdictKind::Past)
    throw NotPastError("no finite particular solution: program is " + std::string(to_string(v.kind)));
  if (rw.direct_prob() > 0) return {Particular::Kind::Constant, 1 / rw.direct_prob()};
  return {Particular::Kind::Linear, -1 / drift(rw)};
}

}  // namespace cprt

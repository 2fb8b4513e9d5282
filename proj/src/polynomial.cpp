#include "cprt/polynomial.hpp"

#include "cprt/errors.hpp"
#include "cprt/termination.hpp"

namespace cprt {

Rational CharPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

CharPoly characteristic_polynomial(const RandomWalkProgram& rw) {
  Verdict v = decide(rw);
  if (v.kind != VerdictKind::Past)
    throw NotPastError("characteristic polynomial requested for a program that is not PAST (" +
                       std::string(to_string(v.kind)) + ")");
  CharPoly poly;
  poly.coeffs.assign(rw.probs().begin(), rw.probs().end());
  poly.coeffs[rw.k()] -= 1;
  return poly;
}

std::vector<Rational> divide_by_linear(const std::vector<Rational>& coeffs, const Rational& root,
                                       Rational* remainder) {
  if (coeffs.size() < 2) {
    if (remainder) *remainder = coeffs.empty() ? Rational(0) : coeffs[0];
    return {};
  }
  const std::size_t n = coeffs.size() - 1;
  std::vector<Rational> quotient(n);
  Rational carry = 0;
  for (std::size_t i = n + 1; i-- > 1;) {
    carry = carry * root + coeffs[i];
    quotient[i - 1] = carry;
  }
  if (remainder) *remainder = carry * root + coeffs[0];
  return quotient;
}

}  // namespace cprt

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include "cprt/numeric.hpp"
#include "cprt/program.hpp"

namespace cprt {

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
inline constexpr bool is_multiprecision_v = std::is_same_v<Scalar, Real>;

template <class Scalar>
Scalar from_rational(const Rational& q) {
  if constexpr (is_multiprecision_v<Scalar>) {
    return to_real(q);
  } else {
    return q.convert_to<Scalar>();
  }
}

template <class Scalar>
Real to_real_value(const Scalar& x) {
  if constexpr (is_multiprecision_v<Scalar>) {
    return x;
  } else {
    return Real(x);
  }
}

/// 10^e for a possibly fractional exponent.
template <class Scalar>
Scalar decimal_power(double exponent) {
  using std::pow;
  return pow(Scalar(10), Scalar(exponent));
}

/// Unit roundoff at `digits` decimal digits (machine epsilon for builtins).
template <class Scalar>
Scalar working_epsilon(unsigned digits) {
  if constexpr (is_multiprecision_v<Scalar>) {
    return decimal_power<Scalar>(-static_cast<double>(digits));
  } else {
    return std::numeric_limits<Scalar>::epsilon();
  }
}

/// Requested digits, capped at what a builtin floating type carries.
template <class Scalar>
unsigned effective_digits(unsigned requested) {
  if constexpr (is_multiprecision_v<Scalar>) {
    return requested;
  } else {
    return std::min<unsigned>(requested, std::numeric_limits<Scalar>::digits10);
  }
}

/// Sets Real's precision for the scope; no-op for builtin floating types.
template <class Scalar>
class WorkingPrecision {
 public:
  explicit WorkingPrecision(unsigned digits) {
    if constexpr (is_multiprecision_v<Scalar>) scope_.emplace(digits);
  }

 private:
  std::optional<PrecisionScope> scope_;
};

/// Characteristic polynomial of a random walk program, exact and ascending:
/// coeffs[k + j] = p_j for j != 0 and coeffs[k] = p_0 - 1.
struct CharPoly {
  std::vector<Rational> coeffs;

  std::size_t degree() const { return coeffs.size() - 1; }
  Rational operator()(const Rational& x) const;

  friend bool operator==(const CharPoly&, const CharPoly&) = default;
};

/// Throws NotPastError for programs that are not PAST.
CharPoly characteristic_polynomial(const RandomWalkProgram& rw);

/// Synthetic division by (x - root); ascending coefficients in and out.
std::vector<Rational> divide_by_linear(const std::vector<Rational>& coeffs, const Rational& root,
                                       Rational* remainder = nullptr);

template <class Scalar>
Vector<Scalar> to_scalar_coeffs(const std::vector<Rational>& coeffs) {
  Vector<Scalar> out(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[static_cast<Eigen::Index>(i)] = from_rational<Scalar>(coeffs[i]);
  return out;
}

/// Horner evaluation of ascending coefficients at x.
template <class Coeffs, class T>
T horner(const Coeffs& c, const T& x) {
  T acc(0);
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

/// Value and first derivative in one pass.
template <class Coeffs, class T>
std::pair<T, T> horner_with_derivative(const Coeffs& c, const T& x) {
  T p(0), dp(0);
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) {
    dp = dp * x + p;
    p = p * x + c[i];
  }
  return {p, dp};
}

template <class Scalar>
Vector<Scalar> derivative(const Vector<Scalar>& c, unsigned order = 1) {
  Vector<Scalar> d = c;
  for (unsigned o = 0; o < order && d.size() > 1; ++o) {
    Vector<Scalar> next(d.size() - 1);
    for (Eigen::Index i = 1; i < d.size(); ++i) next[i - 1] = d[i] * Scalar(static_cast<long>(i));
    d = std::move(next);
  }
  if (order > 0 && c.size() <= static_cast<Eigen::Index>(order)) return Vector<Scalar>::Zero(1);
  return d;
}

/// z^e by repeated squaring; negative exponents invert. 0^0 = 1.
template <class T>
T integer_power(T base, std::int64_t exponent) {
  if (exponent < 0) return T(1) / integer_power(base, -exponent);
  T result(1);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

}  // namespace cprt

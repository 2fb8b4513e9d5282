#pragma once

// Scalar types shared by the whole analyzer: exact integers/rationals for
// program data, and a runtime-precision binary float for the numeric core.

#include <complex>
#include <mutex>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace cprt {

namespace mp = boost::multiprecision;

using Integer = mp::mpz_int;
using Rational = mp::mpq_rational;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

template <class Scalar>
using Complex = std::complex<Scalar>;

/// Decimal digits of working precision used when none is requested.
inline constexpr unsigned kDefaultPrecisionDigits = 50;

/// Extra digits carried internally on top of the requested precision.
inline constexpr unsigned kGuardDigits = 20;

/// Sets the default precision of newly created `Real` values for the lifetime
/// of the scope. The mpfr default precision is process-global, so scopes are
/// serialized through a recursive lock; nested scopes on one thread are fine.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned saved_;
};

/// Parses `INT` or `INT/INT` (optional leading sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "n/d" or "n" form.
std::string to_string(const Rational& q);

Real to_real(const Rational& q);

/// 10^(-digits) at the current precision.
Real power_of_ten(int exponent);

/// Scientific/fixed choice left to mpfr; `significant` significant digits.
std::string format_significant(const Real& value, int significant);

/// Fixed-point with `decimals` digits after the point.
std::string format_fixed(const Real& value, int decimals);

/// Rounds to `significant` significant digits (used by the 2-digit display mode).
Real round_significant(const Real& value, int significant);

}  // namespace cprt

#include "cprt/numeric.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace cprt {

namespace {
std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}

Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw std::invalid_argument("empty integer");
  for (char c : digits)
    if (c < '0' || c > '9') throw std::invalid_argument("bad integer '" + std::string(text) + "'");
  return Integer(std::string(text.front() == '+' ? text.substr(1) : text));
}
}  // namespace

PrecisionScope::PrecisionScope(unsigned digits)
    : lock_(precision_mutex()), saved_(Real::default_precision()) {
  Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(num, den);
}

std::string to_string(const Rational& q) { return q.str(); }

Real to_real(const Rational& q) {
  Real r;
  r.backend() = q.backend();
  return r;
}

Real power_of_ten(int exponent) { return pow(Real(10), exponent); }

std::string format_significant(const Real& value, int significant) {
  std::ostringstream os;
  os << std::setprecision(significant) << value;
  return os.str();
}

std::string format_fixed(const Real& value, int decimals) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << value;
  std::string s = os.str();
  // "-0.00" reads badly in closed forms
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

Real round_significant(const Real& value, int significant) {
  if (value == 0) return value;
  int exponent = static_cast<int>(floor(log10(abs(value)))) + 1 - significant;
  Real scale = power_of_ten(exponent);
  return round(value / scale) * scale;
}

}  // namespace cprt

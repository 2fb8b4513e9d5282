#pragma once

// Closed form of the expected runtime of a PAST random walk program:
//
//   rt(x) = C(x) + sum_{|lambda_j| <= 1} sum_{u < v_j} a_{j,u} lambda_j^x x^u   for x > 0
//   rt(x) = 0                                                                  for x <= 0
//
// with C(x) = 1/p' (p' > 0) or -x/mu (p' = 0). The k coefficients a_{j,u} are
// fixed by requiring the expression to vanish at x = -k+1, ..., 0.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/LU>

#include "cprt/errors.hpp"
#include "cprt/polynomial.hpp"
#include "cprt/roots.hpp"

namespace cprt {

/// C(x): constant 1/p' or linear -x/mu.
struct Particular {
  enum class Kind { Constant, Linear };
  Kind kind = Kind::Constant;
  Rational coeff;

  Rational at(std::int64_t x) const { return kind == Kind::Constant ? coeff : coeff * x; }

  friend bool operator==(const Particular&, const Particular&) = default;
};

/// Throws NotPastError unless the program is PAST.
Particular particular_solution(const RandomWalkProgram& rw);

template <class Scalar>
struct ComplexTerm {
  Complex<Scalar> root;
  unsigned power = 0;
  Complex<Scalar> coeff;
};

template <class Scalar>
struct RealRootTerm {
  Scalar root;
  unsigned power = 0;
  Scalar coeff;
};

/// (cos_coeff * cos(angle x) + sin_coeff * sin(angle x)) * modulus^x * x^power;
/// stands for the root modulus * e^{i angle} (angle in (0, pi)) and its conjugate.
template <class Scalar>
struct ConjugatePairTerm {
  Scalar modulus;
  Scalar angle;
  unsigned power = 0;
  Scalar cos_coeff;
  Scalar sin_coeff;
};

template <class Scalar>
using RealTerm = std::variant<RealRootTerm<Scalar>, ConjugatePairTerm<Scalar>>;

template <class Scalar>
struct ClosedForm {
  Particular particular;
  std::vector<ComplexTerm<Scalar>> complex_terms;
  std::vector<RealTerm<Scalar>> real_terms;
  unsigned k = 0;
  unsigned precision_digits = kDefaultPrecisionDigits;

  unsigned working_digits() const { return precision_digits + kGuardDigits; }
};

/// Real form of a list of complex terms. Real roots carry the real part of
/// their coefficient; each conjugate pair is represented once, by the root in
/// the upper half plane, with b = 2 Re(a) and b' = -2 Im(a).
template <class Scalar>
std::vector<RealTerm<Scalar>> to_real_terms(const std::vector<ComplexTerm<Scalar>>& terms) {
  using std::abs;
  using std::arg;
  std::vector<RealTerm<Scalar>> out;
  for (const auto& t : terms) {
    if (t.root.imag() == 0) {
      out.push_back(RealRootTerm<Scalar>{t.root.real(), t.power, t.coeff.real()});
    } else if (t.root.imag() > 0) {
      out.push_back(ConjugatePairTerm<Scalar>{abs(t.root), arg(t.root), t.power, Scalar(2) * t.coeff.real(),
                                              Scalar(-2) * t.coeff.imag()});
    }
  }
  return out;
}

/// Solves the k boundary equations
///   0 = C(x) + sum a_{j,u} lambda_j^x x^u,   x = -k+1, ..., 0
/// (0^0 = 1) by LU with partial pivoting at the working precision.
/// Throws SingularSystemError or PrecisionError when the residual misses 10^(-precision/2).
template <class Scalar>
ClosedForm<Scalar> solve_boundary(const Particular& particular, const RootSet<Scalar>& retained, unsigned k,
                                  unsigned precision_digits = kDefaultPrecisionDigits) {
  using std::abs;
  using C = Complex<Scalar>;
  ClosedForm<Scalar> cf;
  cf.particular = particular;
  cf.k = k;
  cf.precision_digits = precision_digits;
  WorkingPrecision<Scalar> scope(cf.working_digits());

  if (retained.total_multiplicity() != k)
    throw InternalError("boundary system needs " + std::to_string(k) + " roots, got " +
                        std::to_string(retained.total_multiplicity()));
  if (k == 0) return cf;

  for (const auto& r : retained.roots)
    for (unsigned u = 0; u < r.multiplicity; ++u) cf.complex_terms.push_back({r.value, u, C(0)});

  const auto n = static_cast<Eigen::Index>(k);
  Matrix<C> system(n, n);
  Vector<C> rhs(n);
  for (Eigen::Index row = 0; row < n; ++row) {
    const std::int64_t x = -static_cast<std::int64_t>(k) + 1 + row;
    rhs[row] = C(-from_rational<Scalar>(particular.at(x)));
    for (Eigen::Index col = 0; col < n; ++col) {
      const auto& term = cf.complex_terms[static_cast<std::size_t>(col)];
      system(row, col) = integer_power(term.root, x) * integer_power(Scalar(static_cast<long>(x)), term.power);
    }
  }

  Eigen::PartialPivLU<Matrix<C>> lu(system);
  Scalar largest = 0, smallest = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar d = abs(lu.matrixLU()(i, i));
    largest = std::max(largest, d);
    smallest = smallest < 0 ? d : std::min(smallest, d);
  }
  if (!(smallest > largest * working_epsilon<Scalar>(cf.working_digits()) * Scalar(1000)))
    throw SingularSystemError("boundary system is numerically singular");
  Vector<C> coeffs = lu.solve(rhs);

  const Scalar bound = residual_tolerance<Scalar>(precision_digits);
  Vector<C> residual = system * coeffs - rhs;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(abs(residual[i]) < bound)) throw PrecisionError("boundary system residual exceeds tolerance");

  for (Eigen::Index i = 0; i < n; ++i) cf.complex_terms[static_cast<std::size_t>(i)].coeff = coeffs[i];
  cf.real_terms = to_real_terms(cf.complex_terms);
  return cf;
}

/// The closed-form expression at any integer x (meaningful for x > -k),
/// evaluated through the real form.
template <class Scalar>
Scalar evaluate_expression(const ClosedForm<Scalar>& cf, std::int64_t x) {
  using std::cos;
  using std::sin;
  WorkingPrecision<Scalar> scope(cf.working_digits());
  const Scalar xs(static_cast<long>(x));
  Scalar value = from_rational<Scalar>(cf.particular.at(x));
  for (const auto& term : cf.real_terms) {
    if (const auto* r = std::get_if<RealRootTerm<Scalar>>(&term)) {
      value += r->coeff * integer_power(r->root, x) * integer_power(xs, r->power);
    } else {
      const auto& p = std::get<ConjugatePairTerm<Scalar>>(term);
      Scalar phase = p.angle * xs;
      value += (p.cos_coeff * cos(phase) + p.sin_coeff * sin(phase)) * integer_power(p.modulus, x) *
               integer_power(xs, p.power);
    }
  }
  return value;
}

/// Same expression through the complex terms; the imaginary part is round-off.
template <class Scalar>
Complex<Scalar> evaluate_complex(const ClosedForm<Scalar>& cf, std::int64_t x) {
  using C = Complex<Scalar>;
  WorkingPrecision<Scalar> scope(cf.working_digits());
  const Scalar xs(static_cast<long>(x));
  C value(from_rational<Scalar>(cf.particular.at(x)));
  for (const auto& t : cf.complex_terms) value += t.coeff * integer_power(t.root, x) * integer_power(xs, t.power);
  return value;
}

/// Expected runtime at rdw value x: 0 when the guard fails.
template <class Scalar>
Scalar evaluate(const ClosedForm<Scalar>& cf, std::int64_t x) {
  if (x <= 0) return Scalar(0);
  return evaluate_expression(cf, x);
}

/// Shifts one complex coefficient (and its conjugate partner) by `delta`.
/// Used to exercise the checks with a deliberately wrong closed form.
template <class Scalar>
void perturb_coefficient(ClosedForm<Scalar>& cf, std::size_t index, const Scalar& delta) {
  using std::abs;
  if (index >= cf.complex_terms.size()) throw std::out_of_range("no such closed-form term");
  WorkingPrecision<Scalar> scope(cf.working_digits());
  auto& target = cf.complex_terms[index];
  target.coeff += delta;
  if (target.root.imag() != 0) {
    for (auto& other : cf.complex_terms)
      if (&other != &target && other.power == target.power && other.root == std::conj(target.root))
        other.coeff += delta;
  }
  cf.real_terms = to_real_terms(cf.complex_terms);
}

}  // namespace cprt

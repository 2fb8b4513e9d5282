#pragma once

// Roots of the characteristic polynomial with multiplicities.
//
// lambda = 1 is split off exactly when it is a root; the remaining factor is
// solved by Aberth-Ehrlich simultaneous iteration, approximations closer than
// the cluster tolerance are merged into one multiple root, and every cluster
// is polished by Newton's method on the (v-1)-th derivative, where a root of
// multiplicity v is simple.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "cprt/errors.hpp"
#include "cprt/polynomial.hpp"

namespace cprt {

template <class Scalar>
struct Root {
  Complex<Scalar> value;
  unsigned multiplicity = 1;
  bool on_unit_circle = false;
  bool is_exact_one = false;
};

template <class Scalar>
struct RootSet {
  std::vector<Root<Scalar>> roots;  // ascending modulus, then argument
  unsigned precision_digits = kDefaultPrecisionDigits;
  Scalar cluster_tolerance;

  unsigned total_multiplicity() const {
    unsigned n = 0;
    for (const auto& r : roots) n += r.multiplicity;
    return n;
  }
};

/// |chi(lambda)| bound every reported root satisfies.
template <class Scalar>
Scalar residual_tolerance(unsigned precision_digits) {
  return decimal_power<Scalar>(-static_cast<double>(effective_digits<Scalar>(precision_digits)) / 2);
}

template <class Scalar>
Scalar cluster_tolerance(unsigned precision_digits) {
  return decimal_power<Scalar>(-static_cast<double>(effective_digits<Scalar>(precision_digits)) / 3);
}

/// Simultaneous approximations of all roots of the ascending coefficient
/// vector `c` (leading coefficient nonzero). Corrections are computed from the
/// previous iterate only, so the result does not depend on evaluation order.
template <class Scalar>
std::vector<Complex<Scalar>> aberth_ehrlich(const Vector<Scalar>& c, const Scalar& stop_tolerance,
                                            const Scalar& stall_tolerance, unsigned max_iterations = 2000) {
  using std::abs;
  using std::cos;
  using std::pow;
  using std::sin;
  using C = Complex<Scalar>;

  const Eigen::Index n = c.size() - 1;
  std::vector<C> z;
  if (n < 1) return z;
  if (n == 1) {
    z.emplace_back(-c[0] / c[1]);
    return z;
  }

  // Start on a circle whose radius is the geometric mean of the root moduli,
  // rotated off the real axis so conjugate symmetry does not stall the iteration.
  Scalar radius = c[0] == 0 ? Scalar(1) : pow(abs(c[0] / c[n]), Scalar(1) / Scalar(static_cast<long>(n)));
  if (radius == 0) radius = Scalar(1);
  const Scalar two_pi = Scalar(2) * boost::math::constants::pi<Scalar>();
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar angle = two_pi * Scalar(static_cast<long>(i)) / Scalar(static_cast<long>(n)) + Scalar(0.4);
    z.emplace_back(radius * cos(angle), radius * sin(angle));
  }

  std::vector<C> step(static_cast<std::size_t>(n));
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  Scalar best = -1;
  unsigned since_best = 0;
  for (unsigned iter = 0; iter < max_iterations; ++iter) {
    Scalar largest = 0;
    bool all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      step[i] = C(0);
      if (done[i]) continue;
      auto [p, dp] = horner_with_derivative(c, z[i]);
      if (p == C(0)) {
        done[i] = true;
        continue;
      }
      C repulsion(0);
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) repulsion += C(1) / (z[i] - z[j]);
      C ratio = p / dp;
      C denom = C(1) - ratio * repulsion;
      step[i] = (dp == C(0) || denom == C(0)) ? C(radius * stop_tolerance * Scalar(1000)) : ratio / denom;
      Scalar size = abs(step[i]);
      Scalar scale = std::max(Scalar(1), abs(z[i]));
      if (size <= stop_tolerance * scale) {
        done[i] = true;
      } else {
        all_done = false;
      }
      largest = std::max(largest, size);
    }
    for (std::size_t i = 0; i < z.size(); ++i) z[i] -= step[i];
    if (all_done) break;
    // multiple roots converge linearly down to a noise floor; stop once the
    // corrections stopped shrinking well below the clustering scale
    if (best < 0 || largest < best / 2) {
      best = largest;
      since_best = 0;
    } else if (++since_best >= 8 && largest < stall_tolerance) {
      break;
    }
  }
  return z;
}

namespace detail {

template <class Scalar>
bool root_order(const Root<Scalar>& a, const Root<Scalar>& b) {
  using std::abs;
  using std::arg;
  Scalar ma = abs(a.value), mb = abs(b.value);
  if (ma != mb) return ma < mb;
  return arg(a.value) < arg(b.value);
}

/// Newton on the (v-1)-th derivative of `c`.
template <class Scalar>
Complex<Scalar> polish(const Vector<Scalar>& c, Complex<Scalar> z, unsigned multiplicity, const Scalar& eps) {
  using std::abs;
  using C = Complex<Scalar>;
  Vector<Scalar> g = derivative(c, multiplicity - 1);
  if (g.size() < 2) return z;
  for (int iter = 0; iter < 200; ++iter) {
    auto [p, dp] = horner_with_derivative(g, z);
    if (dp == C(0)) break;
    C dz = p / dp;
    z -= dz;
    if (abs(dz) <= eps * std::max(Scalar(1), abs(z))) break;
  }
  return z;
}

template <class Scalar>
void snap_real(Complex<Scalar>& z, const Scalar& tol) {
  using std::abs;
  if (abs(z.imag()) < tol) z = Complex<Scalar>(z.real(), Scalar(0));
}

}  // namespace detail

/// All deg(chi) roots with multiplicities. The caller's precision is
/// `precision_digits`; computation runs with kGuardDigits extra digits.
/// Throws PrecisionError when a root misses the residual bound.
template <class Scalar>
RootSet<Scalar> find_roots(const CharPoly& poly, unsigned precision_digits = kDefaultPrecisionDigits) {
  using std::abs;
  using C = Complex<Scalar>;
  const unsigned working = precision_digits + kGuardDigits;
  WorkingPrecision<Scalar> scope(working);

  RootSet<Scalar> out;
  out.precision_digits = precision_digits;
  out.cluster_tolerance = cluster_tolerance<Scalar>(precision_digits);
  const Scalar tol = out.cluster_tolerance;
  const Scalar eps = working_epsilon<Scalar>(working);

  std::vector<Rational> rest = poly.coeffs;
  bool has_one = poly(Rational(1)) == 0;
  if (has_one) rest = divide_by_linear(rest, Rational(1));

  Vector<Scalar> c = to_scalar_coeffs<Scalar>(rest);
  std::vector<C> approx = aberth_ehrlich(c, eps * Scalar(100), tol / Scalar(1000));

  // single-linkage clustering
  std::vector<std::size_t> parent(approx.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < approx.size(); ++i)
    for (std::size_t j = i + 1; j < approx.size(); ++j)
      if (abs(approx[i] - approx[j]) < tol) parent[find(i)] = find(j);

  std::vector<Root<Scalar>> clusters;
  std::vector<std::size_t> seen;
  for (std::size_t i = 0; i < approx.size(); ++i) {
    std::size_t r = find(i);
    if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
    seen.push_back(r);
    C sum(0);
    unsigned count = 0;
    for (std::size_t j = 0; j < approx.size(); ++j)
      if (find(j) == r) {
        sum += approx[j];
        ++count;
      }
    C center = sum / Scalar(static_cast<long>(count));
    detail::snap_real(center, tol);
    center = detail::polish(c, center, count, eps);
    detail::snap_real(center, tol);
    clusters.push_back({center, count, false, false});
  }

  // pair nonreal roots with their conjugates; the upper one is authoritative
  std::vector<bool> paired(clusters.size(), false);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (clusters[i].value.imag() <= 0) continue;
    std::size_t best = clusters.size();
    Scalar best_dist = 0;
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      if (paired[j] || clusters[j].value.imag() >= 0 || clusters[j].multiplicity != clusters[i].multiplicity)
        continue;
      Scalar d = abs(clusters[j].value - std::conj(clusters[i].value));
      if (best == clusters.size() || d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    if (best == clusters.size() || best_dist >= tol)
      throw InternalError("nonreal root without a conjugate partner");
    paired[best] = true;
    paired[i] = true;
    clusters[best].value = std::conj(clusters[i].value);
  }
  for (std::size_t i = 0; i < clusters.size(); ++i)
    if (clusters[i].value.imag() != 0 && !paired[i]) throw InternalError("nonreal root without a conjugate partner");

  if (has_one) clusters.push_back({C(Scalar(1)), 1, true, true});

  const Vector<Scalar> full = to_scalar_coeffs<Scalar>(poly.coeffs);
  const Scalar residual_bound = residual_tolerance<Scalar>(precision_digits);
  for (auto& root : clusters) {
    if (!root.is_exact_one) {
      Scalar residual = abs(horner(full, root.value));
      if (!(residual < residual_bound))
        throw PrecisionError("root residual exceeds 10^-" + std::to_string(precision_digits / 2) +
                             "; increase the precision");
    }
    root.on_unit_circle = abs(abs(root.value) - Scalar(1)) < tol;
  }

  std::sort(clusters.begin(), clusters.end(), detail::root_order<Scalar>);
  out.roots = std::move(clusters);
  if (out.total_multiplicity() != poly.degree())
    throw InternalError("root multiplicities sum to " + std::to_string(out.total_multiplicity()) +
                        ", expected degree " + std::to_string(poly.degree()));
  return out;
}

/// Keeps the k roots (with multiplicity) of smallest modulus, i.e. those with
/// |lambda| <= 1. Throws PrecisionError when the split is numerically
/// ambiguous and InternalError when the count or modulus guarantee fails.
template <class Scalar>
RootSet<Scalar> filter_unit_disc(const RootSet<Scalar>& all, unsigned k) {
  using std::abs;
  RootSet<Scalar> kept;
  kept.precision_digits = all.precision_digits;
  kept.cluster_tolerance = all.cluster_tolerance;
  const Scalar& tol = all.cluster_tolerance;

  std::vector<Root<Scalar>> sorted = all.roots;
  std::stable_sort(sorted.begin(), sorted.end(), detail::root_order<Scalar>);
  unsigned count = 0;
  std::size_t split = 0;
  while (split < sorted.size() && count < k) count += sorted[split++].multiplicity;
  if (count != k)
    throw InternalError("cannot select exactly " + std::to_string(k) + " roots of modulus <= 1 (got " +
                        std::to_string(count) + ")");

  if (split > 0 && split < sorted.size()) {
    Scalar inner = abs(sorted[split - 1].value);
    Scalar outer = abs(sorted[split].value);
    if (outer - inner < Scalar(2) * tol)
      throw PrecisionError("roots of modulus " + format_significant(to_real_value(inner), 8) +
                           " and " + format_significant(to_real_value(outer), 8) +
                           " cannot be separated at the cluster tolerance; increase the precision");
  }
  if (split > 0 && abs(sorted[split - 1].value) > Scalar(1) + tol)
    throw InternalError("a retained root lies outside the unit disc");
  if (split < sorted.size() && abs(sorted[split].value) < Scalar(1) - tol)
    throw InternalError("an excluded root lies inside the unit disc");

  kept.roots.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(split));
  return kept;
}

}  // namespace cprt

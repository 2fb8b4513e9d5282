#include "cprt/kleene.hpp"

#include <algorithm>

#include "cprt/errors.hpp"
#include "cprt/polynomial.hpp"

namespace cprt {
namespace {

struct Step {
  std::int64_t offset;
  Rational prob;
};

std::vector<Step> positive_steps(const RandomWalkProgram& rw) {
  std::vector<Step> steps;
  for (std::int64_t j = -static_cast<std::int64_t>(rw.k()); j <= static_cast<std::int64_t>(rw.m()); ++j)
    if (rw.prob(j) > 0) steps.push_back({j, rw.prob(j)});
  return steps;
}

void check_window(std::size_t states, const KleeneOptions& options) {
  if (states > options.window_limit)
    throw ResourceError("Kleene window of " + std::to_string(states) + " states exceeds the limit of " +
                        std::to_string(options.window_limit));
}

/// Mass still inside the loop after t = 0, 1, ... steps, passed to `visit`
/// until it returns false or n steps have been taken. mass[x] = P(X_t = x), x >= 1.
/// The state window grows with the support of the walk.
template <class Scalar, class Visit>
void forward_mass(const RandomWalkProgram& rw, std::int64_t x0, std::uint64_t n, const KleeneOptions& options,
                  Visit&& visit) {
  std::vector<std::pair<std::int64_t, Scalar>> steps;
  for (const auto& s : positive_steps(rw)) steps.emplace_back(s.offset, from_rational<Scalar>(s.prob));

  const auto m = static_cast<std::int64_t>(rw.m());
  std::vector<Scalar> cur, next;
  auto reserve = [&](std::int64_t top) {
    const auto needed = static_cast<std::size_t>(top) + 1;
    if (needed <= cur.size()) return;
    check_window(needed, options);
    const std::size_t size = std::min(std::max(needed, 2 * cur.size()), options.window_limit);
    cur.resize(size, Scalar(0));
    next.resize(size, Scalar(0));
  };
  reserve(x0 + m);
  cur[static_cast<std::size_t>(x0)] = Scalar(1);
  std::int64_t lo = x0, hi = x0;
  for (std::uint64_t t = 0; t < n; ++t) {
    Scalar alive(0);
    for (std::int64_t x = lo; x <= hi; ++x) alive += cur[static_cast<std::size_t>(x)];
    if (!visit(t, alive)) return;
    reserve(hi + m);
    std::int64_t new_lo = hi + m + 1, new_hi = 0;
    for (std::int64_t x = lo; x <= hi; ++x) {
      Scalar& here = cur[static_cast<std::size_t>(x)];
      if (here == 0) continue;
      for (const auto& [offset, p] : steps) {
        std::int64_t y = x + offset;
        if (y <= 0) continue;
        next[static_cast<std::size_t>(y)] += p * here;
        new_lo = std::min(new_lo, y);
        new_hi = std::max(new_hi, y);
      }
      here = Scalar(0);
    }
    std::swap(cur, next);
    if (new_hi == 0) {
      lo = 1;
      hi = 0;
    } else {
      lo = new_lo;
      hi = new_hi;
    }
  }
}

template <class Scalar>
struct Accumulated {
  Scalar value{0};
  Scalar last{0};
  std::uint64_t iterations = 0;
};

}  // namespace

KleeneResult kleene_iterate(const RandomWalkProgram& rw, std::int64_t x0, std::uint64_t n,
                            const KleeneOptions& options) {
  KleeneResult result;
  result.x0 = x0;
  result.iterations = n;
  PrecisionScope scope(options.precision_digits);
  if (x0 <= 0 || n == 0) {
    result.value = 0;
    result.last_increment = 0;
    result.exact = true;
    result.exact_value = Rational(0);
    return result;
  }
  const std::size_t exact_window = static_cast<std::size_t>(n) * (rw.k() + rw.m()) + 1;
  if (exact_window <= options.exact_window_limit) {
    Accumulated<Rational> acc;
    forward_mass<Rational>(rw, x0, n, options, [&](std::uint64_t, const Rational& alive) {
      acc.value += alive;
      acc.last = alive;
      return true;
    });
    result.exact = true;
    result.exact_value = acc.value;
    result.value = to_real(acc.value);
    result.last_increment = to_real(acc.last);
  } else {
    Accumulated<Real> acc;
    forward_mass<Real>(rw, x0, n, options, [&](std::uint64_t, const Real& alive) {
      acc.value += alive;
      acc.last = alive;
      return true;
    });
    result.value = acc.value;
    result.last_increment = acc.last;
  }
  return result;
}

KleeneResult kleene_until(const RandomWalkProgram& rw, std::int64_t x0, const Real& increment_tolerance,
                          std::uint64_t max_iterations, const KleeneOptions& options) {
  KleeneResult result;
  result.x0 = x0;
  PrecisionScope scope(options.precision_digits);
  result.value = 0;
  result.last_increment = 0;
  if (x0 <= 0) {
    result.exact = true;
    result.exact_value = Rational(0);
    return result;
  }
  Real tolerance = increment_tolerance;
  forward_mass<Real>(rw, x0, max_iterations, options, [&](std::uint64_t t, const Real& alive) {
    result.value += alive;
    result.last_increment = alive;
    result.iterations = t + 1;
    return !(alive < tolerance);
  });
  return result;
}

KleeneTable kleene_table(const RandomWalkProgram& rw, std::int64_t lo, std::int64_t hi, std::uint64_t n,
                         const KleeneOptions& options) {
  if (hi < lo) throw std::invalid_argument("empty Kleene table range");
  PrecisionScope scope(options.precision_digits);
  std::vector<std::pair<std::int64_t, Real>> steps;
  for (const auto& s : positive_steps(rw)) steps.emplace_back(s.offset, to_real(s.prob));

  // f_t is needed on [lo - (n - t) k, hi + (n - t) m]; positive states only.
  const std::int64_t top = hi + static_cast<std::int64_t>(n * rw.m());
  check_window(static_cast<std::size_t>(std::max<std::int64_t>(top, 0)) + 1, options);
  std::vector<Real> f(static_cast<std::size_t>(std::max<std::int64_t>(top, 0)) + 1, Real(0));
  std::vector<Real> g(f.size(), Real(0));
  for (std::uint64_t t = 1; t <= n; ++t) {
    const std::int64_t reach = hi + static_cast<std::int64_t>((n - t) * rw.m());
    for (std::int64_t x = 1; x <= reach; ++x) {
      Real acc(1);
      for (const auto& [offset, p] : steps) {
        std::int64_t y = x + offset;
        if (y > 0) acc += p * f[static_cast<std::size_t>(y)];
      }
      g[static_cast<std::size_t>(x)] = acc;
    }
    std::swap(f, g);
  }

  KleeneTable table;
  table.iterations = n;
  table.lo = lo;
  for (std::int64_t x = lo; x <= hi; ++x) table.values.push_back(x <= 0 || n == 0 ? Real(0) : f[static_cast<std::size_t>(x)]);
  return table;
}

}  // namespace cprt

#include "cprt/check.hpp"

#include <algorithm>

#include "cprt/errors.hpp"

namespace cprt {
namespace {

CheckItem make_item(std::string name, const Real& worst, const Real& tolerance, std::string detail = {}) {
  return {std::move(name), worst <= tolerance, worst, tolerance, std::move(detail)};
}

Real max_of(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace

bool CheckReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.passed; });
}

const CheckItem* CheckReport::find(const std::string& name) const {
  for (const auto& i : items)
    if (i.name == name) return &i;
  return nullptr;
}

Real recurrence_residual(const RandomWalkProgram& rw, const ClosedForm<Real>& cf, std::int64_t x_max) {
  PrecisionScope scope(cf.working_digits());
  std::vector<std::pair<std::int64_t, Real>> steps;
  for (std::int64_t j = -static_cast<std::int64_t>(rw.k()); j <= static_cast<std::int64_t>(rw.m()); ++j)
    if (rw.prob(j) > 0) steps.emplace_back(j, to_real(rw.prob(j)));
  const Real reset_prob = to_real(rw.direct_prob());
  Real worst = 0;
  for (std::int64_t x = 1; x <= x_max; ++x) {
    Real r = evaluate(cf, x) - 1;
    for (const auto& [j, p] : steps) r -= p * evaluate(cf, x + j);
    r -= reset_prob * evaluate(cf, rw.reset_target());
    worst = max_of(worst, abs(r));
  }
  return worst;
}

Real boundary_residual(const ClosedForm<Real>& cf) {
  PrecisionScope scope(cf.working_digits());
  Real worst = 0;
  for (std::int64_t x = -static_cast<std::int64_t>(cf.k) + 1; x <= 0; ++x)
    worst = max_of(worst, abs(evaluate_expression(cf, x)));
  return worst;
}

CheckReport run_checks(const RandomWalkProgram& rw, const ClosedForm<Real>& cf, const RuntimeBounds& bounds,
                       const CheckOptions& options) {
  PrecisionScope scope(cf.working_digits());
  const Real tol = residual_tolerance<Real>(cf.precision_digits);
  CheckReport report;

  report.items.push_back(make_item("recurrence", recurrence_residual(rw, cf, options.recurrence_max), tol,
                                   "x = 1.." + std::to_string(options.recurrence_max)));
  report.items.push_back(make_item("boundary", boundary_residual(cf), tol,
                                   "x = " + std::to_string(1 - static_cast<std::int64_t>(cf.k)) + "..0"));

  const auto count = static_cast<long>(cf.complex_terms.size());
  const auto k = static_cast<long>(rw.k());
  report.items.push_back({"root_count", count == k, Real(std::abs(count - k)), Real(0),
                          "retained " + std::to_string(count) + ", k = " + std::to_string(k)});

  Real envelope = 0, sign = 0, negative = 0;
  const bool direct = rw.direct_prob() > 0;
  for (std::int64_t x = 1; x <= options.envelope_max; ++x) {
    Real rt = evaluate(cf, x);
    envelope = max_of(envelope, to_real(bounds.lower(x)) - rt);
    envelope = max_of(envelope, rt - to_real(bounds.upper(x)));
    Real addon = rt - to_real(cf.particular.at(x));
    sign = max_of(sign, direct ? addon : Real(-addon));
    negative = max_of(negative, Real(-rt));
  }
  const std::string range = "x = 1.." + std::to_string(options.envelope_max);
  report.items.push_back(make_item("bounds_envelope", envelope, tol, range));
  report.items.push_back(make_item("addon_sign", sign, tol, range + (direct ? ", add-on <= 0" : ", add-on >= 0")));
  report.items.push_back(make_item("nonnegativity", negative, tol, range));

  Real conj_gap = 0;
  bool closed = true;
  for (const auto& t : cf.complex_terms) {
    if (t.root.imag() == 0) continue;
    auto partner = std::find_if(cf.complex_terms.begin(), cf.complex_terms.end(), [&](const auto& u) {
      return u.power == t.power && u.root == std::conj(t.root);
    });
    if (partner == cf.complex_terms.end()) {
      closed = false;
      continue;
    }
    conj_gap = max_of(conj_gap, abs(partner->coeff - std::conj(t.coeff)));
  }
  report.items.push_back({"conjugate_closure", closed && conj_gap <= tol, conj_gap, tol,
                          closed ? "" : "nonreal root without its conjugate"});

  if (!options.kleene_points.empty()) {
    auto [lo, hi] = std::minmax_element(options.kleene_points.begin(), options.kleene_points.end());
    KleeneOptions kopts;
    kopts.precision_digits = cf.working_digits();
    KleeneTable table = kleene_table(rw, *lo, *hi, options.kleene_depth, kopts);
    Real over = 0;
    Real gap = 0;
    for (auto x : options.kleene_points) {
      Real rt = evaluate(cf, x);
      over = max_of(over, table.at(x) - rt);
      gap = max_of(gap, rt - table.at(x));
    }
    report.items.push_back(make_item("kleene_sandwich", over, tol,
                                     "n = " + std::to_string(options.kleene_depth) + ", largest gap " +
                                         format_significant(gap, 6)));
  }
  return report;
}

CheckReport run_checks(const AnalysisReport& report, const CheckOptions& options) {
  if (report.verdict.kind != VerdictKind::Past || !report.closed_form)
    throw NotPastError("checks need a PAST program, verdict is " + std::string(to_string(report.verdict.kind)));
  return run_checks(report.reduction.walk, *report.closed_form, *report.bounds, options);
}

}  // namespace cprt

#include "cprt/analysis.hpp"

#include <chrono>
#include <limits>

#include "cprt/errors.hpp"

namespace cprt {
namespace {

class StageClock {
 public:
  StageClock(std::vector<StageTiming>& out, bool enabled) : out_(out), enabled_(enabled) {}

  template <class F>
  auto run(const char* stage, F&& f) {
    if (!enabled_) return f();
    auto start = std::chrono::steady_clock::now();
    auto finish = [&] {
      std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
      out_.push_back({stage, elapsed.count()});
    };
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      finish();
    } else {
      auto result = f();
      finish();
      return result;
    }
  }

 private:
  std::vector<StageTiming>& out_;
  bool enabled_;
};

Real infinity_value() {
  return std::numeric_limits<Real>::infinity();
}

}  // namespace

AnalysisReport analyze_cp(const CpProgram& prog, const AnalysisOptions& options) {
  std::vector<StageTiming> timings;
  StageClock clock(timings, options.record_timings);

  Reduction reduction = clock.run("reduce", [&] { return to_random_walk(prog); });
  Verdict verdict = clock.run("decide", [&] { return decide(prog); });
  AnalysisReport report{.program = prog,
                        .reduction = reduction,
                        .verdict = verdict,
                        .drift = drift(reduction.walk),
                        .precision_digits = options.precision_digits};

  if (report.verdict.kind == VerdictKind::Past) {
    const RandomWalkProgram& rw = report.reduction.walk;
    report.bounds = clock.run("bounds", [&] { return bounds(rw); });
    if (rw.k() + rw.m() > options.max_degree)
      throw ResourceError("k + m = " + std::to_string(rw.k() + rw.m()) + " exceeds the limit of " +
                          std::to_string(options.max_degree));
    report.polynomial = clock.run("polynomial", [&] { return characteristic_polynomial(rw); });
    report.roots = clock.run("roots", [&] { return find_roots<Real>(*report.polynomial, options.precision_digits); });
    report.retained = clock.run("filter", [&] { return filter_unit_disc(*report.roots, rw.k()); });
    report.closed_form = clock.run("boundary", [&] {
      return solve_boundary(particular_solution(rw), *report.retained, rw.k(), options.precision_digits);
    });
  }
  report.timings = std::move(timings);
  return report;
}

Real expected_runtime_at_rdw(const AnalysisReport& report, std::int64_t rdw_value) {
  const Verdict& v = report.verdict;
  if (v.kind == VerdictKind::Trivial && v.trivial == TrivialBehaviour::NeverTerminates) return infinity_value();
  if (rdw_value <= 0) return Real(0);
  if (v.kind != VerdictKind::Past) return infinity_value();
  return evaluate(*report.closed_form, rdw_value);
}

Real expected_runtime(const AnalysisReport& report, std::span<const std::int64_t> x) {
  if (x.size() != report.program.arity())
    throw ValidationError("expected " + std::to_string(report.program.arity()) + " values, got " +
                          std::to_string(x.size()));
  return expected_runtime_at_rdw(report, report.reduction.rdw.apply(x));
}

}  // namespace cprt

#pragma once

// End-to-end pipeline: reduce, decide, bound and (for PAST programs) solve
// for the exact expected runtime as a function of x = rdw(vars).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cprt/closed_form.hpp"
#include "cprt/polynomial.hpp"
#include "cprt/reduction.hpp"
#include "cprt/roots.hpp"
#include "cprt/termination.hpp"

namespace cprt {

struct AnalysisOptions {
  unsigned precision_digits = kDefaultPrecisionDigits;
  /// Largest accepted k + m; beyond it root finding is refused.
  unsigned max_degree = 64;
  bool record_timings = false;
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0;
};

struct AnalysisReport {
  CpProgram program;
  Reduction reduction;
  Verdict verdict;
  Rational drift;  // of the reduced program, also on the p' > 0 path
  std::optional<RuntimeBounds> bounds{};
  std::optional<CharPoly> polynomial{};
  std::optional<RootSet<Real>> roots{};
  std::optional<RootSet<Real>> retained{};
  std::optional<ClosedForm<Real>> closed_form{};
  unsigned precision_digits = kDefaultPrecisionDigits;
  std::vector<StageTiming> timings{};
};

/// Throws PrecisionError/SingularSystemError from the numeric stages and
/// ResourceError when k + m exceeds the configured limit.
AnalysisReport analyze_cp(const CpProgram& prog, const AnalysisOptions& options = {});

/// Expected runtime at the program variables `x`: 0 when the guard fails,
/// +infinity when the program is not PAST and the guard holds.
Real expected_runtime(const AnalysisReport& report, std::span<const std::int64_t> x);

/// Same, for a value of rdw directly.
Real expected_runtime_at_rdw(const AnalysisReport& report, std::int64_t rdw_value);

}  // namespace cprt

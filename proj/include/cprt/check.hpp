#pragma once

// Verification of a computed closed form against the recurrence it must
// solve, its boundary values, the linear bounds and the Kleene oracle.

#include <cstdint>
#include <string>
#include <vector>

#include "cprt/analysis.hpp"
#include "cprt/kleene.hpp"

namespace cprt {

struct CheckOptions {
  std::int64_t recurrence_max = 100;  // x = 1..recurrence_max
  std::int64_t envelope_max = 200;    // x = 1..envelope_max for bounds, sign and nonnegativity
  std::uint64_t kleene_depth = 200;
  std::vector<std::int64_t> kleene_points = {1, 5, 25};
};

struct CheckItem {
  std::string name;
  bool passed = false;
  Real worst;      // largest observed violation measure (<= tolerance to pass)
  Real tolerance;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;

  bool passed() const;
  const CheckItem* find(const std::string& name) const;
};

/// Runs every check on a PAST report; throws NotPastError otherwise.
CheckReport run_checks(const AnalysisReport& report, const CheckOptions& options = {});

/// Same, for an explicitly supplied closed form (e.g. a perturbed one).
CheckReport run_checks(const RandomWalkProgram& rw, const ClosedForm<Real>& cf, const RuntimeBounds& bounds,
                       const CheckOptions& options = {});

/// max_{1 <= x <= x_max} |rt(x) - sum_j p_j rt(x + j) - p' rt(d) - 1| with rt = 0 for x <= 0.
Real recurrence_residual(const RandomWalkProgram& rw, const ClosedForm<Real>& cf, std::int64_t x_max);

/// max_{-k < x <= 0} |expression(x)|.
Real boundary_residual(const ClosedForm<Real>& cf);

}  // namespace cprt

#pragma once

// JSON forms of analysis results (nlohmann::json). Rationals are strings
// "n/d"; reals are decimal strings carrying precision_digits + 10
// significant digits so they parse back to the same value.

#include <string>
#include <utility>

#include <json.hpp>

#include "cprt/analysis.hpp"
#include "cprt/check.hpp"
#include "cprt/distribution.hpp"
#include "cprt/kleene.hpp"
#include "cprt/simulate.hpp"

namespace cprt {

using Json = nlohmann::ordered_json;

/// Significant digits written for reals computed at `precision_digits`.
unsigned serialized_digits(unsigned precision_digits);

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json real_to_json(const Real& x, unsigned digits);
/// Parses at the current default precision.
Real real_from_json(const Json& j);

Json to_json(const RdwMap& rdw);
Json to_json(const Verdict& v);
Json to_json(const RuntimeBounds& b);
Json to_json(const RandomWalkProgram& rw);
Json closed_form_to_json(const ClosedForm<Real>& cf, const RdwMap& rdw);
std::pair<ClosedForm<Real>, RdwMap> closed_form_from_json(const Json& j);

struct ReportJsonOptions {
  bool include_timings = false;
  bool include_roots = true;
};
Json to_json(const AnalysisReport& report, const ReportJsonOptions& options = {});

Json to_json(const SimEstimate& e);
Json to_json(const KleeneResult& r, unsigned digits);
Json to_json(const CheckReport& r, unsigned digits);
Json to_json(const HistogramTest& t);

/// Hex SHA-256 of the canonical program text.
std::string program_digest(const CpProgram& prog);

}  // namespace cprt

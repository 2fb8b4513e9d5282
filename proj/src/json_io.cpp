#include "cprt/json_io.hpp"

#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "cprt/errors.hpp"
#include "cprt/parser.hpp"

namespace cprt {
namespace {

Json complex_to_json(const Complex<Real>& z, unsigned digits) {
  return Json{{"re", real_to_json(z.real(), digits)}, {"im", real_to_json(z.imag(), digits)}};
}

Complex<Real> complex_from_json(const Json& j) {
  return {real_from_json(j.at("re")), real_from_json(j.at("im"))};
}

Json particular_to_json(const Particular& p) {
  return Json{{"kind", p.kind == Particular::Kind::Linear ? "linear" : "constant"},
              {"coeff", rational_to_json(p.coeff)}};
}

Particular particular_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind != "linear" && kind != "constant") throw std::invalid_argument("unknown particular kind '" + kind + "'");
  return {kind == "linear" ? Particular::Kind::Linear : Particular::Kind::Constant,
          rational_from_json(j.at("coeff"))};
}

}  // namespace

unsigned serialized_digits(unsigned precision_digits) { return precision_digits + 10; }

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) { return parse_rational(j.get<std::string>()); }

Json real_to_json(const Real& x, unsigned digits) {
  if (x == 0) return "0";
  if (isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::scientific << std::setprecision(static_cast<int>(digits) - 1) << x;
  return os.str();
}

Real real_from_json(const Json& j) {
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<Real>::infinity();
  if (s == "-inf") return -std::numeric_limits<Real>::infinity();
  return Real(s);
}

Json to_json(const RdwMap& rdw) { return Json{{"a", rdw.guard_a}, {"b", rdw.guard_b}}; }

Json to_json(const Verdict& v) {
  Json j{{"kind", to_string(v.kind)}, {"reason", to_string(v.reason)}};
  j["drift"] = v.drift ? rational_to_json(*v.drift) : Json(nullptr);
  if (v.trivial) j["trivial"] = to_string(*v.trivial);
  return j;
}

Json to_json(const RuntimeBounds& b) {
  return Json{{"lower", {{"slope", rational_to_json(b.lower_slope)}, {"intercept", rational_to_json(b.lower_intercept)}}},
              {"upper", {{"slope", rational_to_json(b.upper_slope)}, {"intercept", rational_to_json(b.upper_intercept)}}}};
}

Json to_json(const RandomWalkProgram& rw) {
  Json probs = Json::object();
  for (std::int64_t j = static_cast<std::int64_t>(rw.m()); j >= -static_cast<std::int64_t>(rw.k()); --j)
    probs[std::to_string(j)] = rational_to_json(rw.prob(j));
  return Json{{"m", rw.m()},
              {"k", rw.k()},
              {"probs", probs},
              {"direct_prob", rational_to_json(rw.direct_prob())},
              {"reset_target", rw.reset_target()}};
}

Json closed_form_to_json(const ClosedForm<Real>& cf, const RdwMap& rdw) {
  PrecisionScope scope(cf.working_digits());
  const unsigned digits = serialized_digits(cf.precision_digits);
  Json real_terms = Json::array();
  for (const auto& term : cf.real_terms) {
    if (const auto* r = std::get_if<RealRootTerm<Real>>(&term)) {
      real_terms.push_back(Json{{"kind", "real_root"},
                                {"root", real_to_json(r->root, digits)},
                                {"power", r->power},
                                {"coeff", real_to_json(r->coeff, digits)}});
    } else {
      const auto& p = std::get<ConjugatePairTerm<Real>>(term);
      real_terms.push_back(Json{{"kind", "conjugate_pair"},
                                {"modulus", real_to_json(p.modulus, digits)},
                                {"angle", real_to_json(p.angle, digits)},
                                {"power", p.power},
                                {"cos_coeff", real_to_json(p.cos_coeff, digits)},
                                {"sin_coeff", real_to_json(p.sin_coeff, digits)}});
    }
  }
  Json complex_terms = Json::array();
  for (const auto& t : cf.complex_terms)
    complex_terms.push_back(
        Json{{"root", complex_to_json(t.root, digits)}, {"power", t.power}, {"coeff", complex_to_json(t.coeff, digits)}});
  return Json{{"particular", particular_to_json(cf.particular)},
              {"real_terms", real_terms},
              {"complex_terms", complex_terms},
              {"k", cf.k},
              {"rdw", to_json(rdw)},
              {"precision_digits", cf.precision_digits}};
}

std::pair<ClosedForm<Real>, RdwMap> closed_form_from_json(const Json& j) {
  ClosedForm<Real> cf;
  cf.precision_digits = j.at("precision_digits").get<unsigned>();
  PrecisionScope scope(cf.working_digits());
  cf.particular = particular_from_json(j.at("particular"));
  cf.k = j.at("k").get<unsigned>();
  for (const auto& t : j.at("complex_terms"))
    cf.complex_terms.push_back({complex_from_json(t.at("root")), t.at("power").get<unsigned>(),
                                complex_from_json(t.at("coeff"))});
  for (const auto& t : j.at("real_terms")) {
    const auto kind = t.at("kind").get<std::string>();
    if (kind == "real_root") {
      cf.real_terms.push_back(RealRootTerm<Real>{real_from_json(t.at("root")), t.at("power").get<unsigned>(),
                                                 real_from_json(t.at("coeff"))});
    } else if (kind == "conjugate_pair") {
      cf.real_terms.push_back(ConjugatePairTerm<Real>{real_from_json(t.at("modulus")), real_from_json(t.at("angle")),
                                                      t.at("power").get<unsigned>(), real_from_json(t.at("cos_coeff")),
                                                      real_from_json(t.at("sin_coeff"))});
    } else {
      throw std::invalid_argument("unknown real term kind '" + kind + "'");
    }
  }
  RdwMap rdw{j.at("rdw").at("a").get<IntVector>(), j.at("rdw").at("b").get<std::int64_t>()};
  return {std::move(cf), std::move(rdw)};
}

Json to_json(const AnalysisReport& report, const ReportJsonOptions& options) {
  const unsigned digits = serialized_digits(report.precision_digits);
  Json j;
  j["program_digest"] = program_digest(report.program);
  j["verdict"] = to_json(report.verdict);
  j["drift"] = rational_to_json(report.drift);
  j["rdw"] = to_json(report.reduction.rdw);
  j["random_walk"] = to_json(report.reduction.walk);
  j["bounds"] = report.bounds ? to_json(*report.bounds) : Json(nullptr);
  if (report.polynomial) {
    Json coeffs = Json::array();
    for (const auto& c : report.polynomial->coeffs) coeffs.push_back(rational_to_json(c));
    j["characteristic_polynomial"] = coeffs;
  }
  if (options.include_roots && report.roots) {
    PrecisionScope scope(report.precision_digits + kGuardDigits);
    Json roots = Json::array();
    for (const auto& r : report.roots->roots)
      roots.push_back(Json{{"value", complex_to_json(r.value, digits)},
                           {"multiplicity", r.multiplicity},
                           {"on_unit_circle", r.on_unit_circle},
                           {"exact", r.is_exact_one}});
    j["roots"] = roots;
  }
  j["closed_form"] = report.closed_form ? closed_form_to_json(*report.closed_form, report.reduction.rdw) : Json(nullptr);
  j["precision_digits"] = report.precision_digits;
  if (options.include_timings) {
    Json t = Json::object();
    for (const auto& s : report.timings) t[s.stage] = s.milliseconds;
    j["timings_ms"] = t;
  }
  return j;
}

Json to_json(const SimEstimate& e) {
  std::ostringstream mean, hw;
  mean << std::setprecision(17) << e.mean;
  hw << std::setprecision(17) << e.half_width_95;
  return Json{{"mean", mean.str()},      {"half_width_95", hw.str()}, {"trials", e.trials},
              {"censored", e.censored},  {"seed", e.seed},           {"step_cap", e.step_cap}};
}

Json to_json(const KleeneResult& r, unsigned digits) {
  Json j{{"x0", r.x0},
         {"iterations", r.iterations},
         {"value", real_to_json(r.value, digits)},
         {"last_increment", real_to_json(r.last_increment, digits)},
         {"exact", r.exact}};
  j["exact_value"] = r.exact_value ? rational_to_json(*r.exact_value) : Json(nullptr);
  return j;
}

Json to_json(const CheckReport& r, unsigned digits) {
  Json items = Json::array();
  for (const auto& i : r.items)
    items.push_back(Json{{"name", i.name},
                         {"passed", i.passed},
                         {"worst", real_to_json(i.worst, digits)},
                         {"tolerance", real_to_json(i.tolerance, digits)},
                         {"detail", i.detail}});
  return Json{{"passed", r.passed()}, {"checks", items}};
}

Json to_json(const HistogramTest& t) {
  return Json{{"statistic", t.statistic}, {"degrees_of_freedom", t.degrees_of_freedom},
              {"p_value", t.p_value},     {"alpha", t.alpha},
              {"bins", t.bins},           {"trials_a", t.trials_a},
              {"trials_b", t.trials_b},   {"passed", t.passed}};
}

std::string program_digest(const CpProgram& prog) {
  const std::string text = to_source(prog);
  unsigned char hash[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), hash, &length, EVP_sha256(), nullptr) != 1)
    throw InternalError("SHA-256 digest failed");
  std::ostringstream os;
  for (unsigned i = 0; i < length; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(hash[i]);
  return os.str();
}

}  // namespace cprt

// cprt: exact expected runtimes of constant-probability loop programs.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cprt/analysis.hpp"
#include "cprt/check.hpp"
#include "cprt/errors.hpp"
#include "cprt/json_io.hpp"
#include "cprt/kleene.hpp"
#include "cprt/parser.hpp"
#include "cprt/simulate.hpp"

namespace {

using namespace cprt;

enum ExitCode { kOk = 0, kInvalidInput = 1, kPrecision = 2, kIo = 3, kCheckFailed = 4 };

class IoError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::string path;
  unsigned precision = kDefaultPrecisionDigits;
  unsigned max_degree = 64;
  int display_digits = 6;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

CpProgram load(const Common& c) { return parse_program(read_file(c.path)); }

AnalysisReport analyze(const Common& c, const CpProgram& prog, bool timings = false) {
  AnalysisOptions options;
  options.precision_digits = c.precision;
  options.max_degree = c.max_degree;
  options.record_timings = timings;
  return analyze_cp(prog, options);
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- formatting

std::string join_ints(const std::vector<std::int64_t>& v, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

/// "t - h + 1" for a.z - b.
std::string rdw_expression(const CpProgram& prog) {
  std::string out;
  for (std::size_t i = 0; i < prog.arity(); ++i) {
    const std::int64_t a = prog.guard_a[i];
    if (a == 0) continue;
    const std::int64_t mag = a < 0 ? -a : a;
    if (out.empty()) {
      out += a < 0 ? "-" : "";
    } else {
      out += a < 0 ? " - " : " + ";
    }
    out += (mag == 1 ? "" : std::to_string(mag) + "*") + prog.var_names[i];
  }
  if (out.empty()) out = "0";
  if (prog.guard_b != 0) out += (prog.guard_b < 0 ? " + " : " - ") + std::to_string(prog.guard_b < 0 ? -prog.guard_b : prog.guard_b);
  return out;
}

struct NumberStyle {
  int digits = 6;
  bool paper = false;  // two significant digits, trailing zeros dropped

  std::string operator()(const Real& v) const {
    if (!paper) return format_significant(v, digits);
    std::ostringstream os;
    os << std::setprecision(2) << static_cast<double>(round_significant(v, 2));
    return os.str();
  }
};

std::string signed_term(const Real& coeff, const std::string& rest, const NumberStyle& fmt, bool first) {
  const bool negative = coeff < 0;
  std::string mag = fmt(negative ? Real(-coeff) : coeff);
  std::string sign = first ? (negative ? "-" : "") : (negative ? "- " : "+ ");
  return sign + mag + rest;
}

std::string power_suffix(unsigned u) {
  if (u == 0) return "";
  return u == 1 ? " * x" : " * x^" + std::to_string(u);
}

std::vector<std::string> closed_form_lines(const ClosedForm<Real>& cf, const NumberStyle& fmt) {
  PrecisionScope scope(cf.working_digits());
  std::vector<std::string> lines;
  const Particular& p = cf.particular;
  lines.push_back(to_string(p.coeff) + (p.kind == Particular::Kind::Linear ? "*x" : ""));
  // constant and polynomial parts (root 1) first, then the decaying terms
  std::vector<RealTerm<Real>> terms;
  for (const auto& t : cf.real_terms)
    if (const auto* r = std::get_if<RealRootTerm<Real>>(&t); r && r->root == 1) terms.push_back(t);
  for (const auto& t : cf.real_terms)
    if (const auto* r = std::get_if<RealRootTerm<Real>>(&t); !r || r->root != 1) terms.push_back(t);
  for (const auto& term : terms) {
    if (const auto* r = std::get_if<RealRootTerm<Real>>(&term)) {
      std::string base = r->root == 1 ? "" : " * (" + fmt(r->root) + ")^x";
      lines.push_back(signed_term(r->coeff, base + power_suffix(r->power), fmt, false));
    } else {
      const auto& c = std::get<ConjugatePairTerm<Real>>(term);
      const std::string decay = " * " + fmt(c.modulus) + "^x";
      const std::string arg = "(" + fmt(c.angle) + " * x)";
      lines.push_back(signed_term(c.cos_coeff, decay + " * cos" + arg + power_suffix(c.power), fmt, false));
      lines.push_back(signed_term(c.sin_coeff, decay + " * sin" + arg + power_suffix(c.power), fmt, false));
    }
  }
  return lines;
}

std::string bound_text(const Rational& slope, const Rational& intercept) {
  std::string out;
  if (slope != 0) out = to_string(slope) + "*x";
  if (intercept != 0 || out.empty()) {
    if (out.empty()) return to_string(intercept);
    out += intercept < 0 ? " - " + to_string(Rational(-intercept)) : " + " + to_string(intercept);
  }
  return out;
}

std::string verdict_text(const Verdict& v) {
  std::string out(to_string(v.kind));
  switch (v.reason) {
    case VerdictReason::DirectTermination: out += " (direct termination)"; break;
    case VerdictReason::DriftSign: out += " (drift sign)"; break;
    case VerdictReason::Triviality:
      out += " (" + std::string(to_string(*v.trivial)) + ")";
      break;
  }
  return out;
}

std::string walk_source(const RandomWalkProgram& rw) { return to_source(to_cp_program(rw)); }

// ---------------------------------------------------------------- commands

struct AnalyzeArgs {
  bool emit_rdw = false;
  bool timings = false;
  bool paper_format = false;
};

int cmd_analyze(const Common& c, const AnalyzeArgs& a) {
  CpProgram prog = load(c);
  AnalysisReport report = analyze(c, prog, a.timings);
  if (c.json) {
    Json j = to_json(report, {a.timings, true});
    if (a.emit_rdw) j["random_walk_source"] = walk_source(report.reduction.walk);
    print_json(j);
    return kOk;
  }
  std::cout << "program      " << c.path << "\n";
  std::cout << "sha256       " << program_digest(prog) << "\n";
  std::cout << "verdict      " << verdict_text(report.verdict) << "\n";
  std::cout << "drift        " << to_string(report.drift) << "\n";
  std::cout << "rdw          x = " << rdw_expression(prog) << "\n";
  const auto& rw = report.reduction.walk;
  std::cout << "walk         m = " << rw.m() << ", k = " << rw.k() << ", p' = " << to_string(rw.direct_prob()) << "\n";
  if (a.emit_rdw) std::cout << "\n" << walk_source(rw) << "\n";
  if (report.bounds) {
    const auto& b = *report.bounds;
    std::cout << "bounds       " << bound_text(b.lower_slope, b.lower_intercept) << " <= rt(x) <= "
              << bound_text(b.upper_slope, b.upper_intercept) << "   for x > 0\n";
  }
  if (report.closed_form) {
    NumberStyle fmt{c.display_digits, a.paper_format};
    std::cout << "closed form  rt(x) = 0 for x <= 0, and for x > 0\n";
    auto lines = closed_form_lines(*report.closed_form, fmt);
    for (std::size_t i = 0; i < lines.size(); ++i) std::cout << (i == 0 ? "  rt(x) = " : "          ") << lines[i] << "\n";
  } else if (report.verdict.kind == VerdictKind::AstNotPast || report.verdict.kind == VerdictKind::NotAst) {
    std::cout << "closed form  none: expected runtime is infinite for x > 0\n";
  }
  if (a.timings) {
    std::cout << "timings";
    for (const auto& t : report.timings) std::cout << "  " << t.stage << " " << t.milliseconds << " ms";
    std::cout << "\n";
  }
  return kOk;
}

int cmd_eval(const Common& c, const std::vector<std::int64_t>& at) {
  CpProgram prog = load(c);
  AnalysisReport report = analyze(c, prog);
  Real value = expected_runtime(report, at);
  const std::int64_t rdw_value = report.reduction.rdw.apply(at);
  PrecisionScope scope(c.precision + kGuardDigits);
  if (c.json) {
    print_json(Json{{"at", at},
                    {"rdw", rdw_value},
                    {"verdict", to_string(report.verdict.kind)},
                    {"value", real_to_json(value, serialized_digits(c.precision))},
                    {"nearest_integer", isinf(value) ? Json(nullptr) : Json(round(value).str())}});
    return kOk;
  }
  std::cout << "rt(" << join_ints(at) << ") = " << (isinf(value) ? std::string("inf") : format_significant(value, c.display_digits))
            << "\n";
  return kOk;
}

struct SimulateArgs {
  std::vector<std::int64_t> at;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::uint64_t cap = 1000000;
  unsigned threads = 1;
};

int cmd_simulate(const Common& c, const SimulateArgs& a) {
  CpProgram prog = load(c);
  SimEstimate e = simulate(prog, a.at, {a.trials, a.cap, a.seed, a.threads});
  if (c.json) {
    Json j = to_json(e);
    j["at"] = a.at;
    print_json(j);
    return kOk;
  }
  std::cout << "mean         " << format_significant(Real(e.mean), c.display_digits) << " +- "
            << format_significant(Real(e.half_width_95), 3) << " (95%)\n";
  std::cout << "trials       " << e.trials << ", censored " << e.censored << ", seed " << e.seed << ", step cap "
            << e.step_cap << "\n";
  if (e.censored > 0)
    std::cout << "warning      " << e.censored << " trial(s) hit the step cap; the mean covers uncensored trials only\n";
  return kOk;
}

struct KleeneArgs {
  std::vector<std::int64_t> at;
  std::uint64_t depth = 200;
  std::string until;
  std::uint64_t max_depth = 1000000;
};

int cmd_kleene(const Common& c, const KleeneArgs& a) {
  CpProgram prog = load(c);
  Reduction red = to_random_walk(prog);
  const std::int64_t x = red.rdw.apply(a.at);
  KleeneOptions options;
  options.precision_digits = c.precision;
  KleeneResult r;
  if (a.until.empty()) {
    r = kleene_iterate(red.walk, x, a.depth, options);
  } else {
    PrecisionScope scope(c.precision);
    Real tol(a.until);
    r = kleene_until(red.walk, x, tol, a.max_depth, options);
  }
  if (c.json) {
    Json j = to_json(r, serialized_digits(c.precision));
    j["at"] = a.at;
    print_json(j);
    return kOk;
  }
  std::cout << "L^" << r.iterations << "(0) at x = " << x << ": " << format_significant(r.value, c.display_digits)
            << "   last increment " << format_significant(r.last_increment, 3) << "   "
            << (r.exact ? "exact " + to_string(*r.exact_value) : std::string("floating point")) << "\n";
  return kOk;
}

struct CheckArgs {
  std::vector<std::int64_t> at;
  std::uint64_t depth = 200;
  std::string perturb;
};

int cmd_check(const Common& c, const CheckArgs& a) {
  CpProgram prog = load(c);
  AnalysisReport report = analyze(c, prog);
  if (report.verdict.kind != VerdictKind::Past)
    throw NotPastError("check needs a PAST program; verdict is " + std::string(to_string(report.verdict.kind)));
  ClosedForm<Real> cf = *report.closed_form;
  if (!a.perturb.empty()) {
    auto colon = a.perturb.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("perturbation must read INDEX:DELTA");
    PrecisionScope scope(cf.working_digits());
    perturb_coefficient(cf, std::stoul(a.perturb.substr(0, colon)), Real(a.perturb.substr(colon + 1)));
  }
  CheckOptions options;
  options.kleene_depth = a.depth;
  if (!a.at.empty()) options.kleene_points = {report.reduction.rdw.apply(a.at)};
  if (options.kleene_points.front() < 1) options.kleene_points = {1};
  CheckReport result = run_checks(report.reduction.walk, cf, *report.bounds, options);
  if (c.json) {
    print_json(to_json(result, 6));
  } else {
    for (const auto& item : result.items)
      std::cout << (item.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(18) << item.name << " worst "
                << std::setw(14) << format_significant(item.worst, 3) << " tolerance " << std::setw(10)
                << format_significant(item.tolerance, 3) << " " << item.detail << "\n";
    std::cout << (result.passed() ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return result.passed() ? kOk : kCheckFailed;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact expected runtimes of constant-probability loop programs"};
  app.require_subcommand(1);
  Common common;
  if (const char* env = std::getenv("CPRT_PRECISION")) common.precision = static_cast<unsigned>(std::stoul(env));

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("program", common.path, "Program file")->required();
    sub->add_option("--precision", common.precision, "Working precision in decimal digits")
        ->check(CLI::Range(10u, 10000u));
    sub->add_option("--max-degree", common.max_degree, "Largest accepted k + m");
    sub->add_option("--digits", common.display_digits, "Significant digits in human-readable output")
        ->check(CLI::Range(1, 200));
    sub->add_flag("--json", common.json, "Print JSON");
  };
  auto add_at = [](CLI::App* sub, std::vector<std::int64_t>& at, bool required) {
    auto* opt = sub->add_option("--at", at, "Initial values, comma separated")->delimiter(',');
    if (required) opt->required();
  };

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Decide termination, bound and solve for the expected runtime");
  add_common(analyze_cmd);
  analyze_cmd->add_flag("--emit-rdw", analyze_args.emit_rdw, "Also print the random walk form");
  analyze_cmd->add_flag("--timings", analyze_args.timings, "Report per-stage timings");
  analyze_cmd->add_flag("--paper-format", analyze_args.paper_format, "Round closed-form numbers to two significant digits");

  std::vector<std::int64_t> eval_at;
  auto* eval_cmd = app.add_subcommand("eval", "Expected runtime at given initial values");
  add_common(eval_cmd);
  add_at(eval_cmd, eval_at, true);

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo estimate of the expected runtime");
  add_common(sim_cmd);
  add_at(sim_cmd, sim_args.at, true);
  sim_cmd->add_option("--trials", sim_args.trials)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim_args.seed);
  sim_cmd->add_option("--cap", sim_args.cap, "Step cap per trial")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threads", sim_args.threads)->check(CLI::Range(1u, 256u));

  KleeneArgs kleene_args;
  auto* kleene_cmd = app.add_subcommand("kleene", "Truncated fixpoint iteration L^n(0) at given initial values");
  add_common(kleene_cmd);
  add_at(kleene_cmd, kleene_args.at, true);
  kleene_cmd->add_option("--depth", kleene_args.depth, "Number of iterations n");
  kleene_cmd->add_option("--until", kleene_args.until, "Iterate until the increment drops below this value");
  kleene_cmd->add_option("--max-depth", kleene_args.max_depth, "Iteration limit for --until");

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Verify the closed form against recurrence, bounds and oracle");
  add_common(check_cmd);
  add_at(check_cmd, check_args.at, false);
  check_cmd->add_option("--depth", check_args.depth, "Kleene depth for the sandwich check");
  check_cmd->add_option("--perturb-coefficient", check_args.perturb)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*analyze_cmd) return cmd_analyze(common, analyze_args);
    if (*eval_cmd) return cmd_eval(common, eval_at);
    if (*sim_cmd) return cmd_simulate(common, sim_args);
    if (*kleene_cmd) return cmd_kleene(common, kleene_args);
    if (*check_cmd) return cmd_check(common, check_args);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const SyntaxError& e) {
    std::cerr << common.path << ":" << e.what() << "\n";
    return kInvalidInput;
  } catch (const ValidationError& e) {
    std::cerr << "invalid program: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const NotPastError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const PrecisionError& e) {
    std::cerr << "precision failure: " << e.what() << "\n";
    return kPrecision;
  } catch (const ResourceError& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return kPrecision;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kPrecision;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

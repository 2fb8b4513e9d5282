#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "cprt/parser.hpp"
#include "cprt/reduction.hpp"

namespace cprt::test {

inline std::string program_path(const std::string& name) { return std::string(CPRT_PROGRAMS_DIR) + "/" + name + ".cp"; }

inline CpProgram load_program(const std::string& name) {
  std::ifstream in(program_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

inline RandomWalkProgram load_walk(const std::string& name) { return to_random_walk(load_program(name)).walk; }

struct CliResult {
  int exit_code = -1;
  std::string out;
};

/// Runs the command-line tool with `args` (shell syntax); stderr is discarded.
inline CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string command = env + (env.empty() ? "" : " ") + std::string(CPRT_CLI) + " " + args + " 2>/dev/null";
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

/// Fixtures whose verdict is Past.
inline const std::array<const char*, 12> kPastFixtures = {
    "race",         "race_rdw",          "mod_race", "direct",     "direct_rdw", "direct_nonconstant",
    "complex_roots", "multiplicity", "negative_binomial", "irrational", "ngo", "decrement"};

}  // namespace cprt::test

#pragma once

#include <string>
#include <string_view>

#include "cprt/program.hpp"

namespace cprt {

/// Parses the program text format and validates the result.
///
///   vars t, h
///   while 1*t - 1*h > -1 {
///     inc (1, 0) [6/11];
///     reset (7, 8) [1/10];
///   }
///
/// Also accepted: a parenthesized guard, `>=` (rewritten to `> b-1`), an
/// omitted `vars` line (variables are taken from the guard in order of
/// appearance) and `x += (..)` / `x = (..)` as spellings of `inc` / `reset`.
/// Throws SyntaxError or ValidationError.
CpProgram parse_program(std::string_view source);

/// Canonical text; `parse_program(to_source(p)) == p` for validated `p`.
std::string to_source(const CpProgram& prog);

}  // namespace cprt

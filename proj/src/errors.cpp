#include "cprt/errors.hpp"

namespace cprt {

SyntaxError::SyntaxError(std::size_t line, std::size_t column, std::string expected, std::string found)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected + ", found " +
            found),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

}  // namespace cprt

// Error taxonomy: ParseError -> CLI exit 2, ConfigError -> CLI exit 3.
#pragma once

#include <stdexcept>
#include <string>

namespace comp {

// Malformed input file (bad syntax, unknown key); carries a line number.
struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& msg, int line_no)
      : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"),
        line(line_no) {}
};

// Structurally valid input that violates a precondition.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace comp

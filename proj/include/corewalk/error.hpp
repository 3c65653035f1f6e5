#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace corewalk {

// Base class for everything the toolkit throws on purpose.
// The CLI maps subtypes to exit codes; see cli.cpp.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid configuration: bad flag values, inconsistent options. Exit code 1.
struct ConfigError : Error {
  using Error::Error;
};

// Unreadable, empty or malformed input. Exit code 2.
struct DataError : Error {
  using Error::Error;
};

struct ParseError : DataError {
  ParseError(std::size_t line_no, const std::string& what)
      : DataError("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
  std::size_t line;
};

// Raised when a shell contains nodes with no path to the already embedded
// set, so the averaging system for them has no anchor. Exit code 3.
struct IsolatedShellError : Error {
  IsolatedShellError(int shell_k, std::vector<std::uint32_t> offending, const std::string& what)
      : Error(what), k(shell_k), nodes(std::move(offending)) {}
  int k;
  std::vector<std::uint32_t> nodes;
};

}  // namespace corewalk

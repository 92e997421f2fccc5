#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcclab {

// Base for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text; carries a location when one is known.
struct ParseError : Error {
  ParseError(std::string msg, std::size_t line, std::size_t column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line), column(column) {}
  explicit ParseError(std::string msg) : Error(std::move(msg)), line(0), column(0) {}
  std::size_t line;
  std::size_t column;
};

// Out-of-range root index or invalid tree path.
struct IndexError : Error {
  using Error::Error;
};

// Mathematically undefined request (zero-probability observation,
// absolute-continuity violation, degenerate log base, too-short input).
struct DomainError : Error {
  using Error::Error;
};

// before/after workspaces are not one derivation step apart.
struct SequencingError : Error {
  using Error::Error;
};

// Malformed configuration, manifest, or fixture.
struct ValidationError : Error {
  using Error::Error;
};

// A configured memory budget was exceeded; results are partial.
struct ResourceError : Error {
  using Error::Error;
};

}  // namespace tcclab

#pragma once

#include <stdexcept>
#include <string>

namespace hfs {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (complex files, slope strings, ...).
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Input data violating a documented invariant.
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Operation not defined for the given arguments (e.g. nonpositive cone slope).
struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& msg) : Error(msg) {}
};

// A consistency check inside the engine failed; indicates a bug or an
// insufficient internal truncation bound, never a bad user input.
struct InternalError : Error {
  explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace hfs

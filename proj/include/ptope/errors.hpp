#pragma once

#include <stdexcept>
#include <string>

namespace ptope {

/// Malformed input text. Carries the 1-based line the reader choked on,
/// or 0 when no single line is to blame.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_ = 0;
};

/// Numerically degenerate data: collapsed edges, vanishing gradients,
/// zero test multivectors. Distinct from invalid_argument so callers can
/// report "degenerate input" rather than "bad call".
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptope

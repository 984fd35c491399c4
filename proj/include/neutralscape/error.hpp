#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace neutralscape {

/// Raised when a caller breaks an operation's precondition
/// (dimension mismatch, index out of range, non-local-optimum walk start).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised by the instance readers. The message always names the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace neutralscape

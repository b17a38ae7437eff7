#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace boundperm {

/// A caller passed arguments outside an operation's contract.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structure lemma failed on a valid input. This is either an
/// implementation bug or a counterexample, never a caller mistake.
class LemmaViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace boundperm

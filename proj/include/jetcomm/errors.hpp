#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetcomm {

/// An operation's documented precondition does not hold for its input.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix polynomial that was required to commute with A(t) does not.
class NotInCommutantError : public std::domain_error {
 public:
  NotInCommutantError(std::size_t stage, const std::string& what)
      : std::domain_error(what), stage_(stage) {}
  [[nodiscard]] std::size_t stage() const { return stage_; }

 private:
  std::size_t stage_;
};

/// A proved identity failed to hold on computed data; always an implementation bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace jetcomm

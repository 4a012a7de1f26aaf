#pragma once

#include <stdexcept>
#include <string>

namespace sepsim {

/// Raised when parameters fall outside the validity region of a closed-form
/// threshold. The message names the violated constraint.
class TheoremDomainError : public std::domain_error {
 public:
  explicit TheoremDomainError(const std::string& constraint)
      : std::domain_error("theorem domain violated: " + constraint),
        constraint_(constraint) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

/// Internal consistency failure (e.g. truthful observations that no
/// configuration could have produced). Indicates a caller contract breach
/// or a bug, never a statistical outcome.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input exceeds a hard enumeration limit (e.g. 2^n configuration scans).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Config or instance file rejected; carries the 1-based line number when the
/// offending line is known (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace sepsim

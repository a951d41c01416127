#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qwp {

// Bad user input: unknown group, malformed file, unsupported case.  CLI exit code 1.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (e.g. mixing dimensions).
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// An internal consistency check failed; this is a bug.  CLI exit code 2.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Winding-number discretization too coarse to resolve the phase.
struct GridTooCoarse : DomainError {
  using DomainError::DomainError;
};

// Group data that does not satisfy the group axioms or gives non-integral omega.
struct CorruptGroupData : DomainError {
  std::vector<std::string> problems;
  explicit CorruptGroupData(std::vector<std::string> p)
      : DomainError(join(p)), problems(std::move(p)) {}

private:
  static std::string join(const std::vector<std::string>& p) {
    std::string s = "corrupt group data";
    for (auto& x : p) s += "\n  " + x;
    return s;
  }
};

}  // namespace qwp

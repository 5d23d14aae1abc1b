#pragma once

#include <stdexcept>
#include <string>

namespace stardisc {

// Bad arguments or malformed input files. CLI exit code 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation would exceed its configured enumeration/node budget.
// CLI exit code 2.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An assertion-style check failed (selftest, tail comparison). CLI exit
// code 3.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stardisc

#pragma once

#include <stdexcept>
#include <string>

namespace qc {

// Process exit codes used by the CLI. Values are part of the public contract.
enum class ExitCode : int {
  ok = 0,
  failure = 1,
  malformed_input = 2,
  budget_exceeded = 3,
  residual_failure = 4,
  join_guard = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ExitCode::malformed_input, what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(ExitCode::budget_exceeded, what) {}
};

class ResidualFailure : public Error {
 public:
  explicit ResidualFailure(const std::string& what) : Error(ExitCode::residual_failure, what) {}
};

// Raised when an equi-join is attempted with an empty operand or no shared key.
class JoinGuardError : public Error {
 public:
  enum class Guard { left_empty, right_empty, no_shared_key };

  JoinGuardError(Guard guard, const std::string& what)
      : Error(ExitCode::join_guard, what), guard_(guard) {}
  Guard guard() const noexcept { return guard_; }

 private:
  Guard guard_;
};

}  // namespace qc

#pragma once

#include <stdexcept>
#include <string>

namespace bidlab {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Malformed experiment or distribution configuration. Maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A policy or engine broke the auction contract during simulation. Exit code 3.
struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bid above the remaining budget handed to a value computation.
struct InfeasibleBid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Feedback of the wrong kind was given to a policy.
struct ModeError : std::logic_error {
  using std::logic_error::logic_error;
};

// Phase-end requested off a phase boundary.
struct ScheduleError : std::logic_error {
  using std::logic_error::logic_error;
};

// Non-finite or inconsistent estimation input.
struct DataError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Brute-force oracle refuses instances beyond its enumeration budget.
struct RefusalError : std::length_error {
  using std::length_error::length_error;
};

}  // namespace bidlab

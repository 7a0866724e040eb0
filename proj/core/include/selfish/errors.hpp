#pragma once

#include <stdexcept>
#include <string>

namespace selfish {

/// A block id or tree edge that does not exist, or a publication that would
/// leave a gap in the published prefix.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Model parameters outside the range where the model is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative solver failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simulation configuration rejected before any event was drawn.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace selfish

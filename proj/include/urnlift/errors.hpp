#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace urnlift {

/// Base class for every error raised by this library.
class UrnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid construction input: bad parameters, malformed configs, mismatched
/// spaces detected while building objects. The CLI maps these to exit code 2.
class ConfigError : public UrnError {
 public:
  using UrnError::UrnError;
};

/// Errors raised while a chain is running. The CLI maps these to exit code 3.
class SimulationError : public UrnError {
 public:
  using UrnError::UrnError;
};

/// Normalizing or drawing from a measure with zero total mass, or stepping a
/// stopped urn.
class ZeroMass : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// A signed update tried to push some component weight below zero (beyond the
/// -1e-12 rounding allowance).
class NegativeMass : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// A state produced by a replacement left the configured admissible set.
class AdmissibilityViolation : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// Two objects that must live on the same colour space do not.
class SpaceMismatch : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// A product-space operation was applied to a non-product measure.
class NotProductSpace : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// A test set outside the family the measure can integrate.
class UnsupportedTestSet : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// Two measures whose continuous parts differ structurally cannot be compared
/// component by component.
class Incomparable : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// Lifting something that is already deterministic.
class AlreadyDeterministic : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// The exact coupling invariant failed. Carries the first bad step. The CLI
/// maps this to exit code 4.
class CouplingBroken : public UrnError {
 public:
  CouplingBroken(std::uint64_t step, const std::string& what)
      : UrnError("coupling broken at step " + std::to_string(step) + ": " + what),
        step_(step) {}
  std::uint64_t step() const noexcept { return step_; }

 private:
  std::uint64_t step_;
};

}  // namespace urnlift

#pragma once

#include <stdexcept>
#include <string>

namespace twistvn {

/// Base class for failures of the numerical machinery (root finders,
/// trackers, germ classification). These are recoverable: callers may
/// retry with a different seed or route.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A requested fiber sits too close to a critical value of the target map.
struct CriticalValueError : NumericalError {
  using NumericalError::NumericalError;
};

/// Step size underflowed while path tracking.
struct TrackingStalled : NumericalError {
  using NumericalError::NumericalError;
};

/// Two tracked fiber values approached each other below the collision floor.
struct PathTooClose : NumericalError {
  using NumericalError::NumericalError;
};

/// Loop closure could not match end values to start values unambiguously.
struct MatchingAmbiguous : NumericalError {
  using NumericalError::NumericalError;
};

/// A germ could not be assigned to a unique equivalence class.
struct ClassificationError : NumericalError {
  using NumericalError::NumericalError;
};

/// Two independent methods that must agree produced different answers
/// (e.g. composition table vs connectedness). Never swallowed.
struct CrossCheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace twistvn

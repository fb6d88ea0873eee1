#pragma once

#include <stdexcept>
#include <string>

namespace otsuki {

// Two failure families. Input violations are the caller's fault and map to
// process exit code 2; numerical failures mean an algorithm could not deliver
// its contract and map to exit code 3. Everything thrown on purpose derives
// from one of these.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidDimension : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct DegenerateShape : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct TargetOutOfRange : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct DomainError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct InvalidArea : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct DimensionUnsupported : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct UsageError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct NoSignChange : NumericalError {
  using NumericalError::NumericalError;
};

struct NonConvergence : NumericalError {
  using NumericalError::NumericalError;
};

struct DenominatorNonpositive : NumericalError {
  using NumericalError::NumericalError;
};

struct NonFinite : NumericalError {
  using NumericalError::NumericalError;
};

struct TurningPointStall : NumericalError {
  using NumericalError::NumericalError;
};

struct PoleCollision : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace otsuki

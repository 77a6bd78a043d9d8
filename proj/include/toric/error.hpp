#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace toric {

enum class ErrorCode {
  CompositeP,
  CapExceeded,
  DivisionByZero,
  FieldMismatch,
  InvalidModulus,
  NonSimplicialFan,
  NonPrimitiveRay,
  InvalidFan,
  TorsionClassGroup,
  NonEffectiveGrading,
  InvalidParams,
  SyntaxError,
  UnknownVariable,
  CoefficientNotInDomain,
  NotHomogeneous,
  ZeroPolynomial,
  DegreeZeroGrading,
  ArityMismatch,
  HypothesisNotMet,
  NonIntegralQuotient,
  IdentityViolated,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure carrying the byte offset into the input text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace toric

#include "toric/error.hpp"

namespace toric {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CompositeP: return "CompositeP";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::NonSimplicialFan: return "NonSimplicialFan";
    case ErrorCode::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorCode::InvalidFan: return "InvalidFan";
    case ErrorCode::TorsionClassGroup: return "TorsionClassGroup";
    case ErrorCode::NonEffectiveGrading: return "NonEffectiveGrading";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::CoefficientNotInDomain: return "CoefficientNotInDomain";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DegreeZeroGrading: return "DegreeZeroGrading";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::NonIntegralQuotient: return "NonIntegralQuotient";
    case ErrorCode::IdentityViolated: return "IdentityViolated";
  }
  return "Unknown";
}

}  // namespace toric

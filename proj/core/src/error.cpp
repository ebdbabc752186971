#include "apnforge/error.hpp"

namespace apnforge {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kReducibleModulus: return "ReducibleModulus";
    case ErrorCode::kFieldTooLarge: return "FieldTooLarge";
    case ErrorCode::kBadDivisor: return "BadDivisor";
    case ErrorCode::kZeroShift: return "ZeroShift";
    case ErrorCode::kBudgetExhausted: return "BudgetExhausted";
    case ErrorCode::kDegenerateU: return "DegenerateU";
    case ErrorCode::kWrongResidueClass: return "WrongResidueClass";
    case ErrorCode::kNonsquareXiRequired: return "NonsquareXiRequired";
    case ErrorCode::kInexactDivision: return "InexactDivision";
    case ErrorCode::kHypothesisUnmet: return "HypothesisUnmet";
    case ErrorCode::kUInSubfield: return "UInSubfield";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kDegenerateHessian: return "DegenerateHessian";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kNonIntegerGenus: return "NonIntegerGenus";
    case ErrorCode::kFixtureMissing: return "FixtureMissing";
    case ErrorCode::kNoRuns: return "NoRuns";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

}  // namespace apnforge

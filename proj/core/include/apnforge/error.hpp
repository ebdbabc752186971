#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apnforge {

enum class ErrorCode {
  kNotPrime,
  kReducibleModulus,
  kFieldTooLarge,
  kBadDivisor,
  kZeroShift,
  kBudgetExhausted,
  kDegenerateU,
  kWrongResidueClass,
  kNonsquareXiRequired,
  kInexactDivision,
  kHypothesisUnmet,
  kUInSubfield,
  kDegenerateDenominator,
  kDegenerateHessian,
  kZeroDenominator,
  kNonIntegerGenus,
  kFixtureMissing,
  kNoRuns,
  kInvalidArgument,
  kParseError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace apnforge

#pragma once

#include <stdexcept>
#include <string>

namespace heckfa {

// Every failure mode maps to exactly one process exit code; the CLI relies on
// this being total.
enum class ErrorCode : int {
  UsageError = 2,
  ParseError = 3,
  SchemaError = 4,
  NonFinite = 5,
  ZeroVariance = 6,
  DegenerateSelection = 7,
  NonConvergence = 8,
  SingularDesign = 9,
  AllZeroMask = 10,
  NoCandidateInRange = 11,
  InsufficientSamples = 12,
  EmptySelection = 13,
  DegenerateSplit = 14,
  ZeroVarianceDifferences = 15,
  IoError = 16,
  InvalidArgument = 17,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

#define HECKFA_DEFINE_ERROR(NAME)                      \
  struct NAME final : Error {                          \
    explicit NAME(const std::string& message)          \
        : Error(ErrorCode::NAME, message) {}           \
  }

HECKFA_DEFINE_ERROR(UsageError);
HECKFA_DEFINE_ERROR(ParseError);
HECKFA_DEFINE_ERROR(SchemaError);
HECKFA_DEFINE_ERROR(NonFinite);
HECKFA_DEFINE_ERROR(ZeroVariance);
HECKFA_DEFINE_ERROR(DegenerateSelection);
HECKFA_DEFINE_ERROR(NonConvergence);
HECKFA_DEFINE_ERROR(SingularDesign);
HECKFA_DEFINE_ERROR(AllZeroMask);
HECKFA_DEFINE_ERROR(NoCandidateInRange);
HECKFA_DEFINE_ERROR(InsufficientSamples);
HECKFA_DEFINE_ERROR(EmptySelection);
HECKFA_DEFINE_ERROR(DegenerateSplit);
HECKFA_DEFINE_ERROR(ZeroVarianceDifferences);
HECKFA_DEFINE_ERROR(IoError);
HECKFA_DEFINE_ERROR(InvalidArgument);

#undef HECKFA_DEFINE_ERROR

}  // namespace heckfa

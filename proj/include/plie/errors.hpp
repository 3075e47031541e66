#pragma once

#include <stdexcept>
#include <string>

namespace plie {

enum class ErrorCode {
  DimensionMismatch,
  IndexOutOfRange,
  InvalidArgument,
  NonFinite,
  SingularMinor,
  BranchCut,
  ZeroG,
  ConstraintViolated,
  OutsideDomain,
  DomainEscape,
  EvaluationFailure,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::SingularMinor: return "SingularMinor";
    case ErrorCode::BranchCut: return "BranchCut";
    case ErrorCode::ZeroG: return "ZeroG";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::DomainEscape: return "DomainEscape";
    case ErrorCode::EvaluationFailure: return "EvaluationFailure";
  }
  return "Unknown";
}

/// Every failure raised by the library. `index` carries the 1-based position the
/// error refers to (minor size, G_j index, copy index) or 0 when not applicable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, int index = 0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  int index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  int index_;
};

}  // namespace plie

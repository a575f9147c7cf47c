#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace leafmult {

enum class ErrorCode {
  kRingMismatch,
  kInvalidArgument,
  kParse,
  kBudget,
  kInconclusive,      // a certificate could not be reached at the available order
  kNeedsRegeneration, // more jet order is required and no producer can supply it
  kUnsupported,       // outside the implemented desk-scale cases
  kHypothesis,        // a mathematical precondition does not hold
  kCertificate,       // an internal certificate failed to verify
  kDegenerate,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRingMismatch: return "ring-mismatch";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kBudget: return "budget";
    case ErrorCode::kInconclusive: return "inconclusive";
    case ErrorCode::kNeedsRegeneration: return "needs-regeneration";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kHypothesis: return "hypothesis";
    case ErrorCode::kCertificate: return "certificate";
    case ErrorCode::kDegenerate: return "degenerate";
  }
  return "unknown";
}

}  // namespace leafmult

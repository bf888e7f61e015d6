#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace uniquemax {

enum class ErrorKind {
  kDimensionMismatch,
  kInvalidArgument,
  kBudgetExceeded,
  kRankDeficient,
  kNotAlternating,
  kNotPointed,
  kSeparationFailed,
  kTailNotCertified,
  kNumeric,
};

const char* to_string(ErrorKind kind);

/// Library error. `evidence` carries numeric context when the failure is
/// tied to a concrete object (e.g. the coefficient vector of a
/// non-alternating probe).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<double> evidence = {})
      : std::runtime_error(message), kind_(kind), evidence_(std::move(evidence)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<double>& evidence() const noexcept { return evidence_; }

 private:
  ErrorKind kind_;
  std::vector<double> evidence_;
};

}  // namespace uniquemax

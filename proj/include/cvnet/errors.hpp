#pragma once

#include <stdexcept>
#include <string>

namespace cvnet {

enum class ErrorKind {
  NotSymmetric,
  NonPositiveDefinite,
  PairingFailure,
  IndexOutOfRange,
  DomainError,
  NonPositiveInput,
  SingularMeasurement,
  Unphysical,
  Unstable,
  CriteriaDisagreement,
  SingularResolvent,
  SingularAliceBlock,
  ZeroConductivity,
  NearSingularDenominator,
  ConfigError,
  ComputeError,
  UnknownPreset,
};

const char* to_string(ErrorKind kind);

// All library failures surface as cvnet::Error; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cvnet

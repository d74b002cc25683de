#include "cvnet/errors.hpp"

namespace cvnet {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NonPositiveDefinite: return "NonPositiveDefinite";
    case ErrorKind::PairingFailure: return "PairingFailure";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonPositiveInput: return "NonPositiveInput";
    case ErrorKind::SingularMeasurement: return "SingularMeasurement";
    case ErrorKind::Unphysical: return "Unphysical";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::CriteriaDisagreement: return "CriteriaDisagreement";
    case ErrorKind::SingularResolvent: return "SingularResolvent";
    case ErrorKind::SingularAliceBlock: return "SingularAliceBlock";
    case ErrorKind::ZeroConductivity: return "ZeroConductivity";
    case ErrorKind::NearSingularDenominator: return "NearSingularDenominator";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ComputeError: return "ComputeError";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace cvnet

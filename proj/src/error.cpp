#include "eisarch/error.hpp"

namespace eisarch {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSelfAdjoint: return "NonSelfAdjoint";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::OutOfConvergenceRegion: return "OutOfConvergenceRegion";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::SingularT: return "SingularT";
    case ErrorKind::OscillatoryNotConverged: return "OscillatoryNotConverged";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::OnDivisor: return "OnDivisor";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotTotallyPositive: return "NotTotallyPositive";
    case ErrorKind::WrongCenter: return "WrongCenter";
    case ErrorKind::NonRationalInput: return "NonRationalInput";
    case ErrorKind::MissingDoublePrimeDatum: return "MissingDoublePrimeDatum";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what, double achieved)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind),
      achieved_(achieved) {}

bool Error::is_convergence_failure() const {
  return kind_ == ErrorKind::QuadratureNotConverged ||
         kind_ == ErrorKind::StepUnderflow ||
         kind_ == ErrorKind::OscillatoryNotConverged;
}

}  // namespace eisarch

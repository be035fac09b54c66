#pragma once

#include <stdexcept>
#include <string>

namespace eisarch {

enum class ErrorKind {
  NonSelfAdjoint,
  NotPositiveDefinite,
  DomainError,
  PoleHit,
  OutOfConvergenceRegion,
  QuadratureNotConverged,
  StepUnderflow,
  Unsupported,
  SingularT,
  OscillatoryNotConverged,
  DegenerateFrame,
  OnDivisor,
  ZeroVector,
  NotTotallyPositive,
  WrongCenter,
  NonRationalInput,
  MissingDoublePrimeDatum,
  ConfigError,
};

const char* to_string(ErrorKind kind);

// Numerical failures carry the best error estimate reached so far.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double achieved = -1.0);

  ErrorKind kind() const { return kind_; }
  double achieved() const { return achieved_; }
  bool is_convergence_failure() const;

 private:
  ErrorKind kind_;
  double achieved_;
};

}  // namespace eisarch
